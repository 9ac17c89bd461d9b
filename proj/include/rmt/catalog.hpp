#pragma once

// Registered kernels h and coefficient functions g, each carrying the data the
// series engines consume: principal parts at -k, the continuation phi, and
// closed-form jets.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmt/core.hpp"
#include "rmt/jets.hpp"

namespace rmt {

/// Growth constants of |g(z)| <= C exp(P Re z + A |Im z|); reporting only.
struct GrowthMeta {
  double C;
  double P;
  double A;
};

struct KernelDefinition {
  std::string id;
  std::function<Complex(Complex)> eval;
  std::function<PrincipalPart(int)> principal_part;
  /// Closed form of phi(z) = sin(pi z) h(-z); empty selects the numeric fallback.
  std::function<Complex(Complex)> phi;
  int deriv_order = 0;
  int max_pole_order = 1;
  /// Strip on which the g = 1 series represents h.
  Strip strip{0.0, 1.0};
};

class KernelFunction {
 public:
  explicit KernelFunction(KernelDefinition def);

  const std::string& id() const noexcept { return def_.id; }
  Complex eval(Complex s) const { return def_.eval(s); }
  PrincipalPart principal_part(int k) const;
  int deriv_order() const noexcept { return def_.deriv_order; }
  int max_pole_order() const noexcept { return def_.max_pole_order; }
  bool simple_poles() const noexcept { return def_.max_pole_order <= 1; }
  const Strip& strip() const noexcept { return def_.strip; }

  /// phi(z). Without a closed form: sin(pi z) h(-z) off the integers and a
  /// Richardson-extrapolated limit at them. Kernels with higher-order poles
  /// make phi singular at the integers; those points throw pole_argument.
  Complex phi_eval(Complex z) const;
  bool phi_uses_fallback() const noexcept { return !def_.phi; }

 private:
  KernelDefinition def_;
};

struct CoefficientDefinition {
  std::string id;
  std::function<Complex(Complex)> eval;
  /// derivs(k, M) = [g(k), ..., g^{(M)}(k)].
  std::function<std::vector<Complex>(int, int)> derivs;
  /// g is analytic on Re z >= -delta' for every delta' < delta.
  double delta = 1.0;
  std::optional<GrowthMeta> growth;
};

class CoefficientFunction {
 public:
  explicit CoefficientFunction(CoefficientDefinition def);

  const std::string& id() const noexcept { return def_.id; }
  Complex eval(Complex z) const { return def_.eval(z); }
  jets::Jet jet(int k, int order) const;
  double delta() const noexcept { return def_.delta; }
  const std::optional<GrowthMeta>& growth() const noexcept { return def_.growth; }

 private:
  CoefficientDefinition def_;
};

/// pi_csc, gamma, psi, gamma_cos_half, gamma_squared, gamma_deriv:m,
/// pi_csc_deriv:m, psi_deriv:m, pi_csc_pow:m.
KernelFunction kernel(const std::string& id);
std::vector<std::string> kernel_ids();

/// const_one, power_a:a, inv_gamma, sin_gamma, inv_linear.
CoefficientFunction coefficient(const std::string& id);
std::vector<std::string> coefficient_ids();

CoefficientFunction sum(const CoefficientFunction& a, const CoefficientFunction& b);
CoefficientFunction product(const CoefficientFunction& a, const CoefficientFunction& b);
CoefficientFunction scale(Complex c, const CoefficientFunction& g);
CoefficientFunction constant(Complex c);

/// Taylor coefficients a_j of (pi t / sin(pi t))^m = sum_j a_j t^{2j}, j < count.
std::vector<double> csc_power_taylor(int m, int count);

}  // namespace rmt
