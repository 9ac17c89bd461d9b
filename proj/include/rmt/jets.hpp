#pragma once

// Truncated Taylor data at integer points and the differential operators
// (d/dz + log x)^m and P_m(d/dz + log x) acting on it.

#include <cstdint>
#include <span>
#include <vector>

#include "rmt/core.hpp"

namespace rmt {

/// Principal part of a kernel h at the pole z = -k:
/// h(z) = sum_{j=1}^{N} c_{-j} (z + k)^{-j} + (analytic).
/// coeffs[j - 1] holds c_{-j}; an empty list (order 0) means h has no pole at -k.
class PrincipalPart {
 public:
  PrincipalPart(int k, std::vector<Complex> coeffs);

  static PrincipalPart none(int k) { return PrincipalPart(k, {}); }
  static PrincipalPart simple(int k, Complex residue) { return PrincipalPart(k, {residue}); }

  int k() const noexcept { return k_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()); }
  /// c_{-j}, j in [1, order]; zero outside.
  Complex coeff(int j) const noexcept;
  /// c_{-1}.
  Complex residue() const noexcept { return coeff(1); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

 private:
  int k_;
  std::vector<Complex> coeffs_;
};

namespace jets {

/// Largest operator order supported; binomials are exact integers up to here.
inline constexpr int max_order = 20;

/// g(k), g'(k), ..., g^{(M)}(k) at a non-negative integer k.
class Jet {
 public:
  Jet(int base, std::vector<Complex> derivs);

  static Jet constant(int base, Complex value, int order);

  int base() const noexcept { return base_; }
  int order() const noexcept { return static_cast<int>(derivs_.size()) - 1; }
  Complex operator[](int j) const { return derivs_[static_cast<std::size_t>(j)]; }
  std::span<const Complex> derivs() const noexcept { return derivs_; }

 private:
  int base_;
  std::vector<Complex> derivs_;
};

/// C(n, k) from Pascal's triangle, n <= max_order.
std::uint64_t binomial(int n, int k);

/// [(d/dz + log x)^m g]_{z=k} = sum_i C(m, i) g^{(i)}(k) log(x)^{m-i}.
Complex shift_operator_apply(const Jet& jet, double log_x, int m);

/// The jet of (d/dz + log x) g, one order shorter than `jet`.
Jet apply_shift(const Jet& jet, double log_x);

/// P_1 = 1, P_2 = x, P_m = (x^2 + (m-2)^2 pi^2) P_{m-2}.
struct PmPolynomial {
  int m;
  std::vector<double> coeffs;  // ascending degree

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
};

PmPolynomial pm_polynomial(int m);

/// [P_m(d/dz + log x) g]_{z=n}.
Complex pm_operator_apply(const Jet& jet, double log_x, int m);

/// Residue of h(z) g(-z) x^{-z} at z = -k:
/// x^k sum_{p=1}^{N} c_{-p} (-1)^{p-1}/(p-1)! [(d/dz + log x)^{p-1} g]_{z=k}.
Complex residue_from_principal_part(const PrincipalPart& pp, const Jet& jet, const Abscissa& at);
Complex residue_from_principal_part(const PrincipalPart& pp, const Jet& jet, double x);

}  // namespace jets
}  // namespace rmt
