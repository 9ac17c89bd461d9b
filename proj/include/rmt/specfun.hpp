#pragma once

// Special functions evaluated on the right-hand sides of the Mellin identities
// and inside the closed-form integrands. Everything here is pure and
// reentrant; no function keeps state between calls.

#include <numbers>

#include "rmt/core.hpp"

namespace rmt::specfun {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double zeta2 = pi * pi / 6.0;
inline constexpr double zeta3 = 1.2020569031595942853997381615114499907650;

/// Default cap on the derivative order accepted by gamma_deriv.
inline constexpr int default_max_gamma_deriv_order = 6;

/// sin(pi z) and cos(pi z) with the real part reduced first, so values near
/// integers and half-integers keep full relative accuracy.
Complex sinpi(Complex z);
Complex cospi(Complex z);
double sinpi(double x);
double cospi(double x);

/// True when z lies within `tol` of a non-positive integer.
bool near_nonpositive_integer(Complex z, double tol = 1e-12);

/// Gamma function: Lanczos approximation on Re(s) >= 1/2, reflection below.
/// Throws Errc::pole_argument at non-positive integers.
Complex gamma(Complex s);
double gamma(double s);

/// 1/Gamma(s); entire, returns exactly 0 at the non-positive integers.
Complex rgamma(Complex s);

/// psi^{(m)}(s), the m-th derivative of the digamma function.
/// Upward recurrence until |s| is large, then the Stirling-type asymptotic series.
Complex polygamma(int m, Complex s);
double polygamma(int m, double s);

/// d^m/ds^m Gamma(s), from Gamma(s) times the complete Bell polynomial in
/// psi, psi', ..., psi^{(m-1)}. Orders above `max_order` throw Errc::order_too_high.
Complex gamma_deriv(int m, Complex s, int max_order = default_max_gamma_deriv_order);

/// d^m/ds^m (1/Gamma(s)) for s off the poles of Gamma.
Complex rgamma_deriv(int m, Complex s, int max_order = 20);

/// d^m/ds^m (pi / sin(pi s)). Written as (pi/sin) * Q_m(pi cot(pi s)) with
/// Q_{m+1}(c) = -c Q_m(c) - (pi^2 + c^2) Q_m'(c). Throws at integers.
Complex csc_deriv(int m, Complex s);

/// pi^m / sin^m(pi s). Throws at integers.
Complex csc_power(int m, Complex s);

/// H_k = 1 + 1/2 + ... + 1/k, H_0 = 0.
double harmonic(int k);

/// Modified Bessel function K_0(x), x > 0.
double bessel_k0(double x);

/// Li_n(x) for n in {2, 3} and real x. For x > 1 the value on the principal
/// branch of -int_0^x log(1-t)/t dt is returned (Im Li_2(x) = -pi log x).
Complex polylog(int n, double x);

/// log(1-x) log(x) + Li_2(x) for x > 0. The imaginary parts of the two terms
/// cancel for x > 1, leaving ln(x-1) ln(x) + Re Li_2(x); evaluated in a form
/// that stays smooth through x = 1.
double re_combo2(double x);

/// e^x Gamma(0, x) = e^x E_1(x) for x > 0; no overflow for large x.
double expx_gamma0(double x);

namespace detail {
// The two branches of bessel_k0, exposed for the crossover check.
double bessel_k0_series(double x);
double bessel_k0_continued_fraction(double x);
}  // namespace detail

}  // namespace rmt::specfun
