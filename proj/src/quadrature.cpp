#include "adelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <limits>

namespace adelab {

namespace {

GaussLegendre compute_gl(int n) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    gl.nodes[static_cast<std::size_t>(i)] = x;
    gl.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return gl;
}

}  // namespace

const GaussLegendre& GaussLegendre::of_order(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order,
                 int panels) {
  const auto& gl = GaussLegendre::of_order(order);
  double total = 0.0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    double half = 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    }
    total += acc * half;
  }
  return total;
}

double fs_radial_psi(const std::vector<long>& exps, double u) {
  // log-sum-exp with the largest exponent factored out
  double m = -std::numeric_limits<double>::infinity();
  for (long a : exps) m = std::max(m, 2.0 * a * u);
  double s = 0.0;
  for (long a : exps) s += std::exp(2.0 * a * u - m);
  return 0.5 * (m + std::log(s));
}

namespace {

// softmax weights w_i proportional to exp(2 a_i u)
void softmax_weights(const std::vector<long>& exps, double u, std::vector<double>& w) {
  w.resize(exps.size());
  double m = -std::numeric_limits<double>::infinity();
  for (long a : exps) m = std::max(m, 2.0 * a * u);
  double s = 0.0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    w[i] = std::exp(2.0 * exps[i] * u - m);
    s += w[i];
  }
  for (auto& x : w) x /= s;
}

}  // namespace

double fs_radial_psi_d1(const std::vector<long>& exps, double u) {
  std::vector<double> w;
  softmax_weights(exps, u, w);
  double s = 0.0;
  for (std::size_t i = 0; i < exps.size(); ++i) s += exps[i] * w[i];
  return s;
}

double fs_radial_psi_d2(const std::vector<long>& exps, double u) {
  std::vector<double> w;
  softmax_weights(exps, u, w);
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    m1 += exps[i] * w[i];
    m2 += static_cast<double>(exps[i]) * exps[i] * w[i];
  }
  return 2.0 * (m2 - m1 * m1);
}

double fs_radial_cutoff(const std::vector<long>& exps, double tail_mass) {
  // smallest positive gap between consecutive exponents controls the decay
  long gap = exps.back();
  for (std::size_t i = 1; i < exps.size(); ++i) gap = std::min(gap, exps[i] - exps[i - 1]);
  double rate = 2.0 * static_cast<double>(std::max(gap, 1L));
  double u = -std::log(std::max(tail_mass, 1e-300)) / rate + 2.0;
  return std::max(u, 10.0);
}

}  // namespace adelab
