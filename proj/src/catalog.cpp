#include "rmt/catalog.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "rmt/specfun.hpp"

namespace rmt {

namespace {

using specfun::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// 1/k!, reaching zero once it leaves the double range.
double inv_factorial(int k) { return std::exp(-std::lgamma(k + 1.0)); }

struct ParsedId {
  std::string name;
  std::optional<std::string> param;
};

ParsedId split_id(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) return {id, std::nullopt};
  return {id.substr(0, colon), id.substr(colon + 1)};
}

int parse_order(const std::string& id, const std::optional<std::string>& p, int lo, int hi) {
  if (!p) fail(Errc::invalid_parameter, id + ": missing integer parameter");
  int m = 0;
  const auto* end = p->data() + p->size();
  auto [ptr, ec] = std::from_chars(p->data(), end, m);
  if (ec != std::errc() || ptr != end) fail(Errc::invalid_parameter, id + ": parameter is not an integer");
  if (m < lo || m > hi) {
    fail(Errc::invalid_parameter, id + ": order must lie in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
  }
  return m;
}

double parse_positive(const std::string& id, const std::optional<std::string>& p) {
  if (!p) fail(Errc::invalid_parameter, id + ": missing parameter a");
  std::size_t used = 0;
  double a = 0.0;
  try {
    a = std::stod(*p, &used);
  } catch (const std::exception&) {
    fail(Errc::invalid_parameter, id + ": parameter is not a number");
  }
  if (used != p->size()) fail(Errc::invalid_parameter, id + ": parameter is not a number");
  if (!(a > 0.0) || !std::isfinite(a)) fail(Errc::invalid_parameter, id + ": requires a > 0");
  return a;
}

bool at_integer(Complex z) {
  return z.imag() == 0.0 && z.real() == std::nearbyint(z.real());
}

// Kernel whose only principal coefficient at -k is c_{-m-1} = (-1)^m m! res(k).
KernelDefinition derivative_kernel(std::string id, int m, std::function<Complex(Complex)> eval,
                                   std::function<double(int)> res, Strip strip) {
  KernelDefinition d;
  d.id = std::move(id);
  d.eval = std::move(eval);
  const double scale = sign_pow(m) * factorial(m);
  d.principal_part = [m, scale, res = std::move(res)](int k) {
    const double c = scale * res(k);
    if (c == 0.0) return PrincipalPart::none(k);
    std::vector<Complex> coeffs(static_cast<std::size_t>(m) + 1, 0.0);
    coeffs[m] = c;
    return PrincipalPart(k, std::move(coeffs));
  };
  d.deriv_order = m;
  d.max_pole_order = m + 1;
  d.strip = strip;
  return d;
}

KernelDefinition pi_csc_def() {
  KernelDefinition d;
  d.id = "pi_csc";
  d.eval = [](Complex s) { return specfun::csc_deriv(0, s); };
  d.principal_part = [](int k) { return PrincipalPart::simple(k, sign_pow(k)); };
  d.phi = [](Complex) { return Complex(-pi); };
  d.strip = {0.0, 1.0};
  return d;
}

KernelDefinition gamma_def() {
  KernelDefinition d;
  d.id = "gamma";
  d.eval = [](Complex s) { return specfun::gamma(s); };
  d.principal_part = [](int k) {
    const double r = sign_pow(k) * inv_factorial(k);
    return r == 0.0 ? PrincipalPart::none(k) : PrincipalPart::simple(k, r);
  };
  d.phi = [](Complex z) { return -pi * specfun::rgamma(z + 1.0); };
  d.strip = {0.0, inf};
  return d;
}

KernelDefinition psi_def() {
  KernelDefinition d;
  d.id = "psi";
  d.eval = [](Complex s) { return specfun::polygamma(0, s); };
  d.principal_part = [](int k) { return PrincipalPart::simple(k, -1.0); };
  d.phi = [](Complex z) { return specfun::sinpi(z) * specfun::polygamma(0, z + 1.0) + pi * specfun::cospi(z); };
  d.strip = {0.0, 1.0};
  return d;
}

KernelDefinition gamma_cos_half_def() {
  KernelDefinition d;
  d.id = "gamma_cos_half";
  d.eval = [](Complex s) { return specfun::gamma(s) * specfun::cospi(0.5 * s); };
  d.principal_part = [](int k) {
    if (k % 2 == 1) return PrincipalPart::none(k);
    const double r = sign_pow(k / 2) * inv_factorial(k);
    return r == 0.0 ? PrincipalPart::none(k) : PrincipalPart::simple(k, r);
  };
  d.phi = [](Complex z) { return -pi * specfun::cospi(0.5 * z) * specfun::rgamma(z + 1.0); };
  d.strip = {0.0, 1.0};
  return d;
}

KernelDefinition gamma_squared_def() {
  KernelDefinition d;
  d.id = "gamma_squared";
  d.eval = [](Complex s) {
    const Complex g = specfun::gamma(s);
    return g * g;
  };
  d.principal_part = [](int k) {
    const double f = inv_factorial(k);
    const double c2 = f * f;
    if (c2 == 0.0) return PrincipalPart::none(k);
    const double c1 = 2.0 * specfun::polygamma(0, k + 1.0) * c2;
    return PrincipalPart(k, {c1, c2});
  };
  d.max_pole_order = 2;
  d.strip = {0.0, inf};
  return d;
}

KernelDefinition pi_csc_pow_def(int m) {
  KernelDefinition d;
  d.id = "pi_csc_pow:" + std::to_string(m);
  d.eval = [m](Complex s) { return specfun::csc_power(m, s); };
  const std::vector<double> a = csc_power_taylor(m, (m + 1) / 2);
  d.principal_part = [m, a](int k) {
    const double sign = (static_cast<long>(k) * m % 2 == 0) ? 1.0 : -1.0;
    std::vector<Complex> coeffs(static_cast<std::size_t>(m), 0.0);
    for (std::size_t j = 0; 2 * static_cast<int>(j) < m; ++j) coeffs[m - 2 * j - 1] = sign * a[j];
    return PrincipalPart(k, std::move(coeffs));
  };
  d.phi = [m](Complex z) -> Complex {
    if (m == 1) return -pi;
    if (at_integer(z)) fail(Errc::pole_argument, "phi of pi_csc_pow: pole at an integer");
    return sign_pow(m) * std::pow(pi, m) / std::pow(specfun::sinpi(z), m - 1);
  };
  d.max_pole_order = m;
  d.strip = {0.0, 1.0};
  return d;
}

Complex neville_at_zero(const std::vector<double>& xs, std::vector<Complex> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      ys[i] = (ys[i] * xs[i - level] - ys[i - 1] * xs[i]) / (xs[i - level] - xs[i]);
    }
  }
  return ys[n - 1];
}

}  // namespace

std::vector<double> csc_power_taylor(int m, int count) {
  if (m < 1) fail(Errc::invalid_parameter, "csc_power_taylor: m must be >= 1");
  // u(y) = sin(x)/x with y = x^2; w = u^{-m} by the J.C.P. Miller recurrence.
  std::vector<double> u(static_cast<std::size_t>(count) + 1);
  for (int n = 0; n <= count; ++n) u[n] = sign_pow(n) / factorial(2 * n + 1);
  std::vector<double> w(static_cast<std::size_t>(count) + 1, 0.0);
  w[0] = 1.0;
  const double alpha = -m;
  for (int n = 1; n <= count; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += (alpha * k - (n - k)) * u[k] * w[n - k];
    w[n] = acc / n;
  }
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) a[j] = w[j] * std::pow(pi, 2 * j);
  return a;
}

KernelFunction::KernelFunction(KernelDefinition def) : def_(std::move(def)) {
  if (!def_.eval || !def_.principal_part) fail(Errc::invalid_parameter, "kernel " + def_.id + ": incomplete definition");
  if (!(def_.strip.lo < def_.strip.hi)) fail(Errc::invalid_parameter, "kernel " + def_.id + ": empty strip");
}

PrincipalPart KernelFunction::principal_part(int k) const {
  if (k < 0) fail(Errc::invalid_parameter, "principal_part: k must be >= 0");
  return def_.principal_part(k);
}

Complex KernelFunction::phi_eval(Complex z) const {
  if (def_.phi) return def_.phi(z);
  const double n = std::nearbyint(z.real());
  const double dist = std::abs(z - Complex(n));
  auto direct = [this](Complex w) { return specfun::sinpi(w) * def_.eval(-w); };
  if (dist > 1e-3) return direct(z);
  if (!simple_poles()) {
    if (dist == 0.0 && n >= 0.0) fail(Errc::pole_argument, "phi of " + def_.id + ": higher-order pole at an integer");
    return direct(z);
  }
  // Even part of the symmetric average is phi(z) + O(h^2); extrapolate h -> 0.
  std::vector<double> h2;
  std::vector<Complex> ys;
  for (int i = 0; i < 6; ++i) {
    const double h = 0.2 * std::ldexp(1.0, -i);
    h2.push_back(h * h);
    ys.push_back(0.5 * (direct(z + h) + direct(z - h)));
  }
  return neville_at_zero(h2, std::move(ys));
}

CoefficientFunction::CoefficientFunction(CoefficientDefinition def) : def_(std::move(def)) {
  if (!def_.eval || !def_.derivs) fail(Errc::invalid_parameter, "coefficient " + def_.id + ": incomplete definition");
  if (!(def_.delta > 0.0 && def_.delta <= 1.0)) {
    fail(Errc::incompatible_domain, "coefficient " + def_.id + ": delta must lie in (0, 1]");
  }
}

jets::Jet CoefficientFunction::jet(int k, int order) const {
  if (k < 0) fail(Errc::invalid_parameter, "jet: k must be >= 0");
  if (order < 0) fail(Errc::invalid_parameter, "jet: negative order");
  if (order > jets::max_order) fail(Errc::order_too_high, "jet: order above 20");
  return jets::Jet(k, def_.derivs(k, order));
}

KernelFunction kernel(const std::string& id) {
  const ParsedId p = split_id(id);
  if (p.name == "pi_csc" && !p.param) return KernelFunction(pi_csc_def());
  if (p.name == "gamma" && !p.param) return KernelFunction(gamma_def());
  if (p.name == "psi" && !p.param) return KernelFunction(psi_def());
  if (p.name == "gamma_cos_half" && !p.param) return KernelFunction(gamma_cos_half_def());
  if (p.name == "gamma_squared" && !p.param) return KernelFunction(gamma_squared_def());
  if (p.name == "gamma_deriv") {
    const int m = parse_order(id, p.param, 0, specfun::default_max_gamma_deriv_order);
    return KernelFunction(derivative_kernel(
        id, m, [m](Complex s) { return specfun::gamma_deriv(m, s); },
        [](int k) { return sign_pow(k) * inv_factorial(k); }, {0.0, inf}));
  }
  if (p.name == "pi_csc_deriv") {
    const int m = parse_order(id, p.param, 0, 8);
    return KernelFunction(derivative_kernel(
        id, m, [m](Complex s) { return specfun::csc_deriv(m, s); }, [](int k) { return sign_pow(k); },
        {0.0, 1.0}));
  }
  if (p.name == "psi_deriv") {
    const int m = parse_order(id, p.param, 0, 8);
    return KernelFunction(derivative_kernel(
        id, m, [m](Complex s) { return specfun::polygamma(m, s); }, [](int) { return -1.0; },
        {0.0, 1.0}));
  }
  if (p.name == "pi_csc_pow") return KernelFunction(pi_csc_pow_def(parse_order(id, p.param, 1, 8)));
  fail(Errc::unknown_id, "unknown kernel: " + id);
}

std::vector<std::string> kernel_ids() {
  return {"pi_csc",        "gamma",          "psi",         "gamma_cos_half", "gamma_squared",
          "gamma_deriv:m", "pi_csc_deriv:m", "psi_deriv:m", "pi_csc_pow:m"};
}

CoefficientFunction coefficient(const std::string& id) {
  const ParsedId p = split_id(id);
  CoefficientDefinition d;
  d.id = id;
  if (p.name == "const_one" && !p.param) {
    d.eval = [](Complex) { return Complex(1.0); };
    d.derivs = [](int, int order) {
      std::vector<Complex> v(static_cast<std::size_t>(order) + 1, 0.0);
      v[0] = 1.0;
      return v;
    };
    d.growth = GrowthMeta{1.0, 0.0, 0.0};
  } else if (p.name == "power_a") {
    const double a = parse_positive(id, p.param);
    const double la = std::log(a);
    d.eval = [la](Complex z) { return std::exp(z * la); };
    d.derivs = [a, la](int k, int order) {
      std::vector<Complex> v(static_cast<std::size_t>(order) + 1);
      double x = std::pow(a, k);
      for (int j = 0; j <= order; ++j, x *= la) v[j] = x;
      return v;
    };
    d.growth = GrowthMeta{1.0, la, 0.0};
  } else if (p.name == "inv_gamma" && !p.param) {
    d.eval = [](Complex z) { return specfun::rgamma(z + 1.0); };
    d.derivs = [](int k, int order) {
      std::vector<Complex> v(static_cast<std::size_t>(order) + 1);
      for (int j = 0; j <= order; ++j) v[j] = specfun::rgamma_deriv(j, k + 1.0, jets::max_order);
      return v;
    };
  } else if (p.name == "sin_gamma" && !p.param) {
    d.eval = [](Complex z) { return -pi * specfun::rgamma(-z); };
    // g(k + t) = (-1)^k sin(pi t) Gamma(k + 1 + t); Leibniz on the two Taylor series.
    d.derivs = [](int k, int order) {
      std::vector<Complex> gd(static_cast<std::size_t>(order) + 1);
      for (int i = 0; i <= order; ++i) gd[i] = specfun::gamma_deriv(i, k + 1.0, jets::max_order);
      std::vector<Complex> v(static_cast<std::size_t>(order) + 1, 0.0);
      for (int j = 0; j <= order; ++j) {
        Complex acc = 0.0;
        for (int n = 1; n <= j; n += 2) {
          const double sn = sign_pow((n - 1) / 2) * std::pow(pi, n);
          acc += static_cast<double>(jets::binomial(j, n)) * sn * gd[j - n];
        }
        v[j] = sign_pow(k) * acc;
      }
      return v;
    };
  } else if (p.name == "inv_linear" && !p.param) {
    d.eval = [](Complex z) { return 1.0 / (z + 1.0); };
    d.derivs = [](int k, int order) {
      std::vector<Complex> v(static_cast<std::size_t>(order) + 1);
      const double base = 1.0 / (k + 1.0);
      double x = base;
      for (int j = 0; j <= order; ++j) {
        v[j] = sign_pow(j) * factorial(j) * x;
        x *= base;
      }
      return v;
    };
  } else {
    fail(Errc::unknown_id, "unknown coefficient function: " + id);
  }
  return CoefficientFunction(std::move(d));
}

std::vector<std::string> coefficient_ids() {
  return {"const_one", "power_a:a", "inv_gamma", "sin_gamma", "inv_linear"};
}

namespace {

double common_delta(const CoefficientFunction& a, const CoefficientFunction& b) {
  const double d = std::min(a.delta(), b.delta());
  if (!(d > 0.0)) fail(Errc::incompatible_domain, "compose: no common half-plane");
  return d;
}

}  // namespace

CoefficientFunction sum(const CoefficientFunction& a, const CoefficientFunction& b) {
  CoefficientDefinition d;
  d.id = "sum(" + a.id() + "," + b.id() + ")";
  d.delta = common_delta(a, b);
  d.eval = [a, b](Complex z) { return a.eval(z) + b.eval(z); };
  d.derivs = [a, b](int k, int order) {
    const jets::Jet ja = a.jet(k, order);
    const jets::Jet jb = b.jet(k, order);
    std::vector<Complex> v(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) v[j] = ja[j] + jb[j];
    return v;
  };
  return CoefficientFunction(std::move(d));
}

CoefficientFunction product(const CoefficientFunction& a, const CoefficientFunction& b) {
  CoefficientDefinition d;
  d.id = "product(" + a.id() + "," + b.id() + ")";
  d.delta = common_delta(a, b);
  d.eval = [a, b](Complex z) { return a.eval(z) * b.eval(z); };
  d.derivs = [a, b](int k, int order) {
    const jets::Jet ja = a.jet(k, order);
    const jets::Jet jb = b.jet(k, order);
    std::vector<Complex> v(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) {
      Complex acc = 0.0;
      for (int i = 0; i <= j; ++i) acc += static_cast<double>(jets::binomial(j, i)) * ja[i] * jb[j - i];
      v[j] = acc;
    }
    return v;
  };
  return CoefficientFunction(std::move(d));
}

CoefficientFunction scale(Complex c, const CoefficientFunction& g) {
  if (!is_finite(c)) fail(Errc::invalid_parameter, "scale: non-finite factor");
  CoefficientDefinition d;
  d.id = "scale(" + g.id() + ")";
  d.delta = g.delta();
  d.eval = [c, g](Complex z) { return c * g.eval(z); };
  d.derivs = [c, g](int k, int order) {
    const jets::Jet jg = g.jet(k, order);
    std::vector<Complex> v(jg.derivs().begin(), jg.derivs().end());
    for (Complex& x : v) x *= c;
    return v;
  };
  return CoefficientFunction(std::move(d));
}

CoefficientFunction constant(Complex c) {
  if (!is_finite(c)) fail(Errc::invalid_parameter, "constant: non-finite value");
  CoefficientDefinition d;
  d.id = "constant";
  d.eval = [c](Complex) { return c; };
  d.derivs = [c](int, int order) {
    std::vector<Complex> v(static_cast<std::size_t>(order) + 1, 0.0);
    v[0] = c;
    return v;
  };
  return CoefficientFunction(std::move(d));
}

}  // namespace rmt
