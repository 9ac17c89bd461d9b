#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rmt {

using Complex = std::complex<double>;

/// Failure categories shared by every module. The CLI maps these onto exit codes.
enum class Errc {
  pole_argument,        // special function evaluated at a pole
  domain,               // argument outside the real domain of a function
  order_too_high,       // derivative order above the configured maximum
  insufficient_jet_order,
  mismatched_base,
  unknown_id,
  invalid_parameter,
  incompatible_domain,
  radius_exceeded,
  non_convergence,
  singular_integrand,
  acceleration_failure,
  seam_mismatch,
  strip_violation,
  kernel_zero,
  missing_closed_form,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A point on (0, inf) carried together with its logarithm and its distance
/// to 1, so integrands stay accurate where x underflows, overflows or rounds
/// to 1.
struct Abscissa {
  double x;
  double log_x;
  double one_minus_x;

  static Abscissa from_x(double x) noexcept {
    return {x, std::log(x), 1.0 - x};
  }
  static Abscissa from_log(double log_x) noexcept {
    return {std::exp(log_x), log_x, -std::expm1(log_x)};
  }
};

/// Open band lo < Re(s) < hi on which an identity or representation holds.
struct Strip {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  /// Re(s) at least `margin` away from both edges.
  bool contains(Complex s, double margin = 0.0) const noexcept {
    return s.real() > lo + margin && s.real() < hi - margin;
  }
};

}  // namespace rmt
