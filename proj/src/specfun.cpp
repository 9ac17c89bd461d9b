#include "rmt/specfun.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "double_double.hpp"

namespace rmt::specfun {

using rmt::detail::DoubleDouble;

namespace {

// Even-index Bernoulli numbers B_2, B_4, ..., B_24.
constexpr std::array<double, 12> bernoulli_even = {
    1.0 / 6.0,           -1.0 / 30.0,      1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,          -691.0 / 2730.0,  7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0,     -174611.0 / 330.0, 854513.0 / 138.0,  -236364091.0 / 2730.0,
};

// Lanczos coefficients, g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

std::string fmt_arg(Complex s) {
  return "(" + std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")";
}

void require_not_pole(Complex s, const char* fn) {
  if (!is_finite(s)) fail(Errc::domain, std::string(fn) + ": non-finite argument");
  if (near_nonpositive_integer(s)) {
    fail(Errc::pole_argument, std::string(fn) + ": pole at " + fmt_arg(s));
  }
}

bool near_integer(Complex s, double tol = 1e-12) {
  return std::fabs(s.imag()) <= tol &&
         std::fabs(s.real() - std::nearbyint(s.real())) <= tol;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Complete Bell polynomial Y_m(x_1, ..., x_m) by the recurrence
// Y_{n+1} = sum_i C(n, i) Y_{n-i} x_{i+1}; `x[i]` holds x_{i+1}.
Complex complete_bell(int m, const std::vector<Complex>& x) {
  std::vector<Complex> y(m + 1);
  y[0] = 1.0;
  for (int n = 0; n < m; ++n) {
    Complex acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= n; ++i) {
      acc += binom * y[n - i] * x[i];
      binom = binom * (n - i) / (i + 1);
    }
    y[n + 1] = acc;
  }
  return y[m];
}

Complex lanczos_gamma(Complex s) {
  const Complex z = s - 1.0;
  Complex sum = lanczos_p[0];
  for (std::size_t i = 1; i < lanczos_p.size(); ++i) {
    sum += lanczos_p[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * sum;
}

// Asymptotic expansion of psi^{(m)}(z) for large Re z.
Complex polygamma_asymptotic(int m, Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  if (m == 0) {
    Complex acc = std::log(z) - 0.5 * inv;
    Complex p = inv2;
    for (std::size_t k = 1; k <= bernoulli_even.size(); ++k) {
      const Complex term = bernoulli_even[k - 1] / (2.0 * k) * p;
      acc -= term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
      p *= inv2;
    }
    return acc;
  }
  // (m-1)!/z^m + m!/(2 z^{m+1}) + sum_k B_2k (2k+m-1)!/(2k)! / z^{2k+m}
  const double fm1 = factorial(m - 1);
  Complex zm = std::pow(inv, m);
  Complex acc = fm1 * zm + 0.5 * fm1 * m * zm * inv;
  Complex p = zm * inv2;
  for (std::size_t k = 1; k <= bernoulli_even.size(); ++k) {
    // (2k+m-1)!/(2k)! = prod_{j=2k+1}^{2k+m-1} j
    double ratio = 1.0;
    for (std::size_t j = 2 * k + 1; j <= 2 * k + m - 1; ++j) ratio *= static_cast<double>(j);
    const Complex term = bernoulli_even[k - 1] * ratio * p;
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    p *= inv2;
  }
  return (m % 2 == 1) ? acc : -acc;
}

DoubleDouble dd_recip(int k) { return DoubleDouble(1.0) / DoubleDouble(static_cast<double>(k)); }

// --- polylog pieces, all on real arguments with real results -------------

double li2_series(double x) {
  DoubleDouble acc = 0.0;
  double p = x;
  for (int k = 1; k < 200; ++k) {
    const double term = p / (static_cast<double>(k) * k);
    acc += term;
    if (std::fabs(term) < 1e-18 * std::fabs(acc.hi)) break;
    p *= x;
  }
  return static_cast<double>(acc);
}

// Li_2 on x <= 1, where it is real.
double li2_real(double x) {
  if (x == 1.0) return zeta2;
  if (x == 0.0) return 0.0;
  if (x < -1.0) {
    const double l = std::log(-x);
    return -zeta2 - 0.5 * l * l - li2_real(1.0 / x);
  }
  if (x < -0.5) {
    const double l = std::log1p(-x);
    return -li2_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x <= 0.5) return li2_series(x);
  return zeta2 - std::log(x) * std::log1p(-x) - li2_series(1.0 - x);
}

double li3_series(double x) {
  DoubleDouble acc = 0.0;
  double p = x;
  for (int k = 1; k < 200; ++k) {
    const double kd = k;
    const double term = p / (kd * kd * kd);
    acc += term;
    if (std::fabs(term) < 1e-18 * std::fabs(acc.hi)) break;
    p *= x;
  }
  return static_cast<double>(acc);
}

// Li_3(y) for y in (0.5, 1], via the expansion in mu = log y about y = 1:
// Li_3(e^mu) = zeta(3) + zeta(2) mu + (3/2 - log(-mu)) mu^2/2 + sum_{k>=3} zeta(3-k) mu^k/k!.
double li3_near_one(double y) {
  if (y == 1.0) return zeta3;
  const double mu = std::log(y);
  DoubleDouble acc = zeta3;
  acc += zeta2 * mu;
  acc += (1.5 - std::log(-mu)) * mu * mu / 2.0;
  // k = 3: zeta(0) = -1/2; k = n + 3 with n odd: zeta(-n) = -B_{n+1}/(n+1).
  double p = mu * mu * mu;  // mu^k
  double fact = 6.0;        // k!
  acc += -0.5 * p / fact;
  for (int k = 4; k < 28; ++k) {
    p *= mu;
    fact *= k;
    const int n = k - 3;
    if (n % 2 == 0) continue;
    const double zeta_neg = -bernoulli_even[(n + 1) / 2 - 1] / (n + 1);
    const double term = zeta_neg * p / fact;
    acc += term;
    if (std::fabs(term) < 1e-20) break;
  }
  return static_cast<double>(acc);
}

double li3_unit(double y) { return y <= 0.5 ? li3_series(y) : li3_near_one(y); }

// Li_3 on x <= 1.
double li3_real(double x) {
  if (x == 0.0) return 0.0;
  if (x > 0.0) return li3_unit(x);
  if (x >= -1.0) return 0.25 * li3_unit(x * x) - li3_unit(-x);
  const double l = std::log(-x);
  return li3_real(1.0 / x) - zeta2 * l - l * l * l / 6.0;
}

}  // namespace

// ---------------------------------------------------------------------------

double sinpi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  const double n = std::nearbyint(x);
  const double r = x - n;
  const double v = std::sin(pi * r);
  return std::fmod(std::fabs(n), 2.0) == 1.0 ? -v : v;
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  const double n = std::nearbyint(x);
  const double r = x - n;
  const double v = std::fabs(r) == 0.5 ? 0.0 : std::cos(pi * r);
  return std::fmod(std::fabs(n), 2.0) == 1.0 ? -v : v;
}

Complex sinpi(Complex z) {
  const double b = pi * z.imag();
  if (b == 0.0) return Complex(sinpi(z.real()), z.imag() * 0.0);
  return {sinpi(z.real()) * std::cosh(b), cospi(z.real()) * std::sinh(b)};
}

Complex cospi(Complex z) {
  const double b = pi * z.imag();
  if (b == 0.0) return Complex(cospi(z.real()), -z.imag() * 0.0);
  return {cospi(z.real()) * std::cosh(b), -sinpi(z.real()) * std::sinh(b)};
}

bool near_nonpositive_integer(Complex z, double tol) {
  return z.real() <= tol && near_integer(z, tol);
}

Complex gamma(Complex s) {
  require_not_pole(s, "gamma");
  if (s.real() < 0.5) return pi / (sinpi(s) * lanczos_gamma(1.0 - s));
  return lanczos_gamma(s);
}

double gamma(double s) { return gamma(Complex(s, 0.0)).real(); }

Complex rgamma(Complex s) {
  if (!is_finite(s)) fail(Errc::domain, "rgamma: non-finite argument");
  if (s.real() < 0.5) return sinpi(s) * lanczos_gamma(1.0 - s) / pi;
  return 1.0 / lanczos_gamma(s);
}

Complex polygamma(int m, Complex s) {
  if (m < 0) fail(Errc::invalid_parameter, "polygamma: negative order");
  require_not_pole(s, "polygamma");
  const double shift_to = 20.0 + m;
  Complex z = s;
  Complex shift_sum = 0.0;
  while (z.real() < shift_to) {
    shift_sum += std::pow(z, -(m + 1));
    z += 1.0;
  }
  const double sign_fact = ((m % 2 == 0) ? 1.0 : -1.0) * factorial(m);
  return polygamma_asymptotic(m, z) - sign_fact * shift_sum;
}

double polygamma(int m, double s) { return polygamma(m, Complex(s, 0.0)).real(); }

Complex gamma_deriv(int m, Complex s, int max_order) {
  if (m < 0) fail(Errc::invalid_parameter, "gamma_deriv: negative order");
  if (m > max_order) {
    fail(Errc::order_too_high, "gamma_deriv: order " + std::to_string(m) +
                                   " exceeds maximum " + std::to_string(max_order));
  }
  const Complex g = gamma(s);
  if (m == 0) return g;
  std::vector<Complex> psis(m);
  for (int j = 0; j < m; ++j) psis[j] = polygamma(j, s);
  return g * complete_bell(m, psis);
}

Complex rgamma_deriv(int m, Complex s, int max_order) {
  if (m < 0) fail(Errc::invalid_parameter, "rgamma_deriv: negative order");
  if (m > max_order) fail(Errc::order_too_high, "rgamma_deriv: order too high");
  require_not_pole(s, "rgamma_deriv");
  const Complex r = rgamma(s);
  if (m == 0) return r;
  std::vector<Complex> psis(m);
  for (int j = 0; j < m; ++j) psis[j] = -polygamma(j, s);
  return r * complete_bell(m, psis);
}

Complex csc_deriv(int m, Complex s) {
  if (m < 0) fail(Errc::invalid_parameter, "csc_deriv: negative order");
  if (!is_finite(s)) fail(Errc::domain, "csc_deriv: non-finite argument");
  if (near_integer(s)) fail(Errc::pole_argument, "csc_deriv: pole at " + fmt_arg(s));
  const Complex sn = sinpi(s);
  const Complex f = pi / sn;
  if (m == 0) return f;
  const Complex c = pi * cospi(s) / sn;
  // q holds Q_m in the monomial basis of c.
  std::vector<double> q = {1.0};
  const double pi2 = pi * pi;
  for (int step = 0; step < m; ++step) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t n = 0; n < next.size(); ++n) {
      double v = 0.0;
      if (n >= 1) v -= static_cast<double>(n) * q[n - 1];
      if (n + 1 < q.size()) v -= pi2 * static_cast<double>(n + 1) * q[n + 1];
      next[n] = v;
    }
    q = std::move(next);
  }
  Complex poly = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) poly = poly * c + *it;
  return f * poly;
}

Complex csc_power(int m, Complex s) {
  if (m < 0) fail(Errc::invalid_parameter, "csc_power: negative power");
  if (!is_finite(s)) fail(Errc::domain, "csc_power: non-finite argument");
  if (near_integer(s)) fail(Errc::pole_argument, "csc_power: pole at " + fmt_arg(s));
  const Complex f = pi / sinpi(s);
  Complex r = 1.0;
  for (int i = 0; i < m; ++i) r *= f;
  return r;
}

double harmonic(int k) {
  if (k < 0) fail(Errc::invalid_parameter, "harmonic: negative index");
  DoubleDouble h = 0.0;
  for (int j = 1; j <= k; ++j) h += dd_recip(j);
  return static_cast<double>(h);
}

namespace detail {

// K_0(x) = -(log(x/2) + gamma) I_0(x) + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
double bessel_k0_series(double x) {
  const DoubleDouble q = DoubleDouble(x) * DoubleDouble(x) / DoubleDouble(4.0);
  DoubleDouble term = 1.0;
  DoubleDouble harm = 0.0;
  DoubleDouble i0 = 1.0;
  DoubleDouble weighted = 0.0;
  for (int k = 1; k < 500; ++k) {
    term = term * q / DoubleDouble(static_cast<double>(k) * k);
    harm += dd_recip(k);
    i0 += term;
    weighted += term * harm;
    if (term.hi * harm.hi < 1e-34 * i0.hi) break;
  }
  const DoubleDouble lead = DoubleDouble(std::log(0.5 * x)) + DoubleDouble(euler_gamma);
  return static_cast<double>(weighted - lead * i0);
}

// Steed's continued fraction CF2 with Temme's normalisation, order 0.
double bessel_k0_continued_fraction(double x) {
  constexpr double eps = 1e-17;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double h = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < eps) break;
  }
  return std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
}

}  // namespace detail

double bessel_k0(double x) {
  if (!(x > 0.0)) fail(Errc::domain, "bessel_k0: requires x > 0");
  // K_0(x) < 1e-310 beyond here.
  if (x > 710.0) return 0.0;
  return x <= 2.0 ? detail::bessel_k0_series(x) : detail::bessel_k0_continued_fraction(x);
}

Complex polylog(int n, double x) {
  if (n != 2 && n != 3) fail(Errc::invalid_parameter, "polylog: order must be 2 or 3");
  if (std::isnan(x)) fail(Errc::domain, "polylog: NaN argument");
  if (x <= 1.0) return n == 2 ? li2_real(x) : li3_real(x);
  const double l = std::log(x);
  if (n == 2) {
    double re;
    if (x <= 2.0) {
      re = zeta2 - l * std::log(x - 1.0) - li2_real(1.0 - x);
    } else {
      re = 2.0 * zeta2 - 0.5 * l * l - li2_real(1.0 / x);
    }
    return {re, -pi * l};
  }
  const double re = li3_real(1.0 / x) + 2.0 * zeta2 * l - l * l * l / 6.0;
  return {re, -0.5 * pi * l * l};
}

double re_combo2(double x) {
  if (!(x > 0.0)) fail(Errc::domain, "re_combo2: requires x > 0");
  if (x < 0.5) return std::log1p(-x) * std::log(x) + li2_real(x);
  // log(1-x) log x + Li_2(x) = zeta(2) - Li_2(1-x) by reflection, on both sides of 1.
  if (x <= 2.0) return zeta2 - li2_real(1.0 - x);
  const double l = std::log(x);
  const double lx1 = l + std::log1p(-1.0 / x);
  return lx1 * l + 2.0 * zeta2 - 0.5 * l * l - li2_real(1.0 / x);
}

double expx_gamma0(double x) {
  if (!(x > 0.0)) fail(Errc::domain, "expx_gamma0: requires x > 0");
  if (std::isinf(x)) return 0.0;
  if (x <= 1.0) {
    // E_1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    DoubleDouble acc = 0.0;
    double p = 1.0;
    for (int k = 1; k < 60; ++k) {
      p *= x / k;
      const double term = ((k % 2 == 1) ? p : -p) / k;
      acc += term;
      if (std::fabs(term) < 1e-20) break;
    }
    const DoubleDouble e1 = acc - DoubleDouble(euler_gamma) - DoubleDouble(std::log(x));
    return std::exp(x) * static_cast<double>(e1);
  }
  // Modified Lentz evaluation of the continued fraction for e^x E_1(x).
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace rmt::specfun
