#include "rmt/jets.hpp"

#include <array>
#include <string>

#include "rmt/specfun.hpp"

namespace rmt {

PrincipalPart::PrincipalPart(int k, std::vector<Complex> coeffs) : k_(k), coeffs_(std::move(coeffs)) {
  if (k_ < 0) fail(Errc::invalid_parameter, "principal part: pole index must be >= 0");
  if (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) {
    fail(Errc::invalid_parameter, "principal part: leading coefficient c_{-N} must be nonzero");
  }
  for (const Complex& c : coeffs_) {
    if (!is_finite(c)) fail(Errc::invalid_parameter, "principal part: non-finite coefficient");
  }
}

Complex PrincipalPart::coeff(int j) const noexcept {
  if (j < 1 || j > order()) return 0.0;
  return coeffs_[static_cast<std::size_t>(j - 1)];
}

namespace jets {

namespace {

constexpr auto pascal = [] {
  std::array<std::array<std::uint64_t, max_order + 1>, max_order + 1> t{};
  for (int n = 0; n <= max_order; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}();

void require_order(const Jet& jet, int needed) {
  if (jet.order() < needed) {
    fail(Errc::insufficient_jet_order, "jet of order " + std::to_string(jet.order()) +
                                           " cannot supply derivative order " + std::to_string(needed));
  }
}

}  // namespace

Jet::Jet(int base, std::vector<Complex> derivs) : base_(base), derivs_(std::move(derivs)) {
  if (base_ < 0) fail(Errc::invalid_parameter, "jet: base point must be >= 0");
  if (derivs_.empty()) fail(Errc::invalid_parameter, "jet: needs at least g(k)");
  for (const Complex& d : derivs_) {
    if (!is_finite(d)) fail(Errc::invalid_parameter, "jet: non-finite derivative");
  }
}

Jet Jet::constant(int base, Complex value, int order) {
  std::vector<Complex> d(static_cast<std::size_t>(order) + 1, 0.0);
  d[0] = value;
  return Jet(base, std::move(d));
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > max_order) fail(Errc::order_too_high, "binomial: n outside [0, 20]");
  if (k < 0 || k > n) return 0;
  return pascal[n][k];
}

Complex shift_operator_apply(const Jet& jet, double log_x, int m) {
  if (m < 0) fail(Errc::invalid_parameter, "shift operator: negative order");
  if (m > max_order) fail(Errc::order_too_high, "shift operator: order above 20");
  require_order(jet, m);
  std::array<double, max_order + 1> lpow{};
  lpow[0] = 1.0;
  for (int j = 1; j <= m; ++j) lpow[j] = lpow[j - 1] * log_x;
  Complex acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    acc += static_cast<double>(pascal[m][i]) * jet[i] * lpow[m - i];
  }
  return acc;
}

Jet apply_shift(const Jet& jet, double log_x) {
  require_order(jet, 1);
  std::vector<Complex> d(static_cast<std::size_t>(jet.order()));
  for (int j = 0; j < jet.order(); ++j) d[j] = jet[j + 1] + log_x * jet[j];
  return Jet(jet.base(), std::move(d));
}

double PmPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PmPolynomial pm_polynomial(int m) {
  if (m < 1) fail(Errc::invalid_parameter, "P_m: m must be >= 1");
  std::vector<double> even_prev = {1.0};       // P_1
  std::vector<double> odd_prev = {0.0, 1.0};   // P_2
  if (m == 1) return {1, even_prev};
  if (m == 2) return {2, odd_prev};
  std::vector<double> p1 = even_prev;  // P_{m-2} for odd m
  std::vector<double> p2 = odd_prev;   // P_{m-2} for even m
  std::vector<double> result;
  for (int j = 3; j <= m; ++j) {
    std::vector<double>& prev = (j % 2 == 1) ? p1 : p2;
    const double shift = static_cast<double>(j - 2) * (j - 2) * specfun::pi * specfun::pi;
    std::vector<double> next(prev.size() + 2, 0.0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i] += shift * prev[i];
      next[i + 2] += prev[i];
    }
    prev = std::move(next);
    if (j == m) result = prev;
  }
  return {m, result};
}

Complex pm_operator_apply(const Jet& jet, double log_x, int m) {
  const PmPolynomial p = pm_polynomial(m);
  require_order(jet, p.degree());
  Complex acc = 0.0;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeffs[i] == 0.0) continue;
    acc += p.coeffs[i] * shift_operator_apply(jet, log_x, i);
  }
  return acc;
}

Complex residue_from_principal_part(const PrincipalPart& pp, const Jet& jet, const Abscissa& at) {
  if (pp.order() == 0) return 0.0;
  if (jet.base() != pp.k()) {
    fail(Errc::mismatched_base, "residue: jet at " + std::to_string(jet.base()) +
                                    " does not match pole at -" + std::to_string(pp.k()));
  }
  require_order(jet, pp.order() - 1);
  Complex acc = 0.0;
  double inv_fact = 1.0;  // 1/(p-1)!
  for (int p = 1; p <= pp.order(); ++p) {
    if (p > 1) inv_fact /= (p - 1);
    const double sign = (p % 2 == 1) ? 1.0 : -1.0;
    const Complex c = pp.coeff(p);
    if (c == Complex(0.0)) continue;
    acc += (c * (sign * inv_fact)) * shift_operator_apply(jet, at.log_x, p - 1);
  }
  return acc * std::pow(at.x, pp.k());
}

Complex residue_from_principal_part(const PrincipalPart& pp, const Jet& jet, double x) {
  if (!(x > 0.0)) fail(Errc::domain, "residue: requires x > 0");
  return residue_from_principal_part(pp, jet, Abscissa::from_x(x));
}

}  // namespace jets
}  // namespace rmt
