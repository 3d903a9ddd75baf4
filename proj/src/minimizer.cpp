#include "dickeent/minimizer.hpp"

#include <cmath>
#include <deque>

namespace dickeent::opt {

namespace {

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd two_loop(const std::deque<Pair>& hist, const Eigen::VectorXd& g) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(hist.size());
  for (std::size_t i = hist.size(); i-- > 0;) {
    alpha[i] = hist[i].rho * hist[i].s.dot(q);
    q -= alpha[i] * hist[i].y;
  }
  if (!hist.empty()) {
    const auto& last = hist.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double beta = hist[i].rho * hist[i].y.dot(q);
    q += (alpha[i] - beta) * hist[i].s;
  }
  return -q;
}

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opts) {
  LbfgsResult out;
  out.x = std::move(x0);
  Eigen::VectorXd g(out.x.size());
  out.f = f(out.x, g);
  if (!std::isfinite(out.f)) return out;

  std::deque<Pair> hist;
  Eigen::VectorXd g_new(out.x.size());
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    if (g.lpNorm<Eigen::Infinity>() <= opts.g_tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd d = two_loop(hist, g);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      hist.clear();
      d = -g;
      slope = -g.squaredNorm();
    }

    double step = hist.empty() ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;
    Eigen::VectorXd x_new;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = out.x + step * d;
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= out.f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent along d; a steepest-descent restart failing too means we are done.
      if (hist.empty()) {
        out.converged = true;
        break;
      }
      hist.clear();
      continue;
    }

    Pair p{x_new - out.x, g_new - g, 0.0};
    const double sy = p.s.dot(p.y);
    const double df = out.f - f_new;
    out.x = std::move(x_new);
    out.f = f_new;
    g = g_new;
    if (sy > 1e-300) {
      p.rho = 1.0 / sy;
      hist.push_back(std::move(p));
      if (static_cast<int>(hist.size()) > opts.history) hist.pop_front();
    }
    if (df <= opts.f_tol * std::abs(out.f) + 1e-15) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace dickeent::opt
