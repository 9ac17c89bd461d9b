#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace rmt::detail {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;
// Contributions below this fraction of the largest one end a sweep.
constexpr double negligible = 1e-18;
// A sweep that hits the range limit with a contribution above this fraction
// of the largest one has an integrand that does not decay there.
constexpr double nondecay_fraction = 1e-8;

}  // namespace

void EvalBudget::charge(long n) {
  used += n;
  if (used > limit) {
    fail(Errc::non_convergence, "quadrature: evaluation budget of " + std::to_string(limit) + " exhausted");
  }
}

ExpSinh::ExpSinh(std::function<Complex(double)> g, double u_min, double u_max, EvalBudget& budget)
    : g_(std::move(g)),
      t_lo_(std::asinh(std::log(u_min) / half_pi)),
      t_hi_(std::asinh(std::log(u_max) / half_pi)),
      budget_(budget) {}

Complex ExpSinh::contribution(double t) {
  budget_.charge();
  const double u = std::exp(half_pi * std::sinh(t));
  const double w = u * half_pi * std::cosh(t);
  const Complex v = g_(u);
  if (v == Complex(0.0)) return 0.0;
  const Complex c = w * v;
  if (!is_finite(c)) fail(Errc::singular_integrand, "quadrature: integrand not finite at u = " + std::to_string(u));
  return c;
}

void ExpSinh::refine() {
  if (levels_ == 0) {
    double max_abs = 0.0;
    auto sweep = [&](int dir, double bound, double& edge, bool& nondecay) {
      int quiet = 0;
      for (int j = (dir > 0 ? 0 : -1);; j += dir) {
        const double t = j * h_;
        if ((dir > 0 && t > bound) || (dir < 0 && t < bound)) {
          // Finer levels fill in the lattice up to the bound itself.
          edge = bound;
          nondecay = std::abs(contribution(bound)) > nondecay_fraction * max_abs;
          return;
        }
        const Complex c = contribution(t);
        sum_ += c;
        const double last = std::abs(c);
        abs_ += last;
        max_abs = std::max(max_abs, last);
        edge = t;
        quiet = (last <= negligible * max_abs) ? quiet + 1 : 0;
        if (quiet >= 2) return;
      }
    };
    sweep(+1, t_hi_, t_b_, result_.nondecay_high);
    sweep(-1, t_lo_, t_a_, result_.nondecay_low);
  } else {
    h_ *= 0.5;
    const long first = static_cast<long>(std::ceil(t_a_ / h_));
    const long last = static_cast<long>(std::floor(t_b_ / h_));
    for (long j = first; j <= last; ++j) {
      if (j % 2 == 0) continue;
      const Complex c = contribution(j * h_);
      sum_ += c;
      abs_ += std::abs(c);
    }
  }
  const Complex value = h_ * sum_;
  result_.err = levels_ == 0 ? std::abs(value) : std::abs(value - result_.value);
  result_.value = value;
  result_.abs_sum = h_ * abs_;
  ++levels_;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<double, double>> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    nodes[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return cache.emplace(n, std::move(nodes)).first->second;
}

}  // namespace rmt::detail
