#include "rmt/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "double_double.hpp"
#include "rmt/specfun.hpp"

namespace rmt {

namespace {

using specfun::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double eps = std::numeric_limits<double>::epsilon();

std::optional<double> param_after(const std::string& id, const std::string& prefix) {
  if (id.rfind(prefix, 0) != 0) return std::nullopt;
  return std::stod(id.substr(prefix.size()));
}

int int_param(const std::string& id, const std::string& prefix) {
  const auto v = param_after(id, prefix);
  return v ? static_cast<int>(*v) : -1;
}

Complex ipow(double base, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= base;
  return r;
}

// log(y)/(1 - y) for y = e^l, with the removable point y = 1 filled in.
double log_over_one_minus(double l, double one_minus) {
  if (one_minus == 0.0) return -1.0;
  return l / one_minus;
}

ClosedForm make(std::string id, std::function<Complex(const Abscissa&)> f, double radius = inf) {
  return ClosedForm{std::move(id), std::move(f), radius, std::nullopt};
}

// Sums over the conjecture lattice for g = a^z: sum (-1)^{mn} P_m(l) (a x)^n = P_m(l)/(1 - (-1)^m a x).
ClosedForm conjecture_power(int m, double a, std::string id) {
  const jets::PmPolynomial p = jets::pm_polynomial(m);
  const double la = std::log(a);
  return make(std::move(id), [p, m, la](const Abscissa& at) -> Complex {
    const double l = at.log_x + la;
    if (m % 2 == 1) return p(l) / (1.0 + std::exp(l));
    // P_m has the factor l for even m.
    jets::PmPolynomial q = p;
    q.coeffs.erase(q.coeffs.begin());
    return q(l) * log_over_one_minus(l, -std::expm1(l));
  }, 1.0 / a);
}

double coeff_power(const std::string& coeff_id) {
  if (coeff_id == "const_one") return 1.0;
  if (auto a = param_after(coeff_id, "power_a:")) return *a;
  return 0.0;
}

// Simple-pole kernels and their derivative families: (log(a x))^m times the g = a^z sum.
std::optional<ClosedForm> log_weighted(const std::string& base, int m, const std::string& coeff_id,
                                       const std::string& id) {
  const double a = coeff_power(coeff_id);
  if (a == 0.0) return std::nullopt;
  const double la = std::log(a);
  auto lw = [m, la](const Abscissa& at) { return ipow(at.log_x + la, m); };
  if (base == "gamma") {
    return make(id, [lw, a](const Abscissa& at) { return lw(at) * std::exp(-a * at.x); });
  }
  if (base == "pi_csc") {
    return make(id, [lw, a](const Abscissa& at) { return lw(at) / (1.0 + a * at.x); }, 1.0 / a);
  }
  if (base == "psi" && a == 1.0) {
    return make(id, [lw](const Abscissa& at) { return -lw(at) / at.one_minus_x; }, 1.0);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SeriesMode mode) noexcept {
  switch (mode) {
    case SeriesMode::simple: return "simple";
    case SeriesMode::general: return "general";
    case SeriesMode::derivative: return "derivative";
    case SeriesMode::conjecture: return "conjecture";
  }
  return "unknown";
}

std::optional<ClosedForm> find_closed_form(SeriesMode mode, const std::string& kernel_id,
                                           const std::string& coeff_id, int m) {
  const std::string id = std::string(to_string(mode)) + "/" + kernel_id + "/" + coeff_id + "/" + std::to_string(m);
  switch (mode) {
    case SeriesMode::simple:
      if (kernel_id == "gamma_cos_half") {
        const double a = coeff_power(coeff_id);
        if (a == 0.0) return std::nullopt;
        ClosedForm c = make(id, [a](const Abscissa& at) { return std::cos(a * at.x); });
        c.oscillation = OscillationHint{pi / a, 0.5 * pi / a};
        return c;
      }
      if (kernel_id == "pi_csc" && coeff_id == "inv_gamma") {
        return make(id, [](const Abscissa& at) { return std::exp(-at.x); });
      }
      if (kernel_id == "pi_csc" && coeff_id == "inv_linear") {
        return make(id, [](const Abscissa& at) { return at.x == 0.0 ? 1.0 : std::log1p(at.x) / at.x; }, 1.0);
      }
      if (kernel_id == "gamma" && coeff_id == "inv_linear") {
        return make(id, [](const Abscissa& at) { return at.x == 0.0 ? 1.0 : -std::expm1(-at.x) / at.x; });
      }
      if (kernel_id == "gamma" || kernel_id == "pi_csc" || kernel_id == "psi") {
        return log_weighted(kernel_id, 0, coeff_id, id);
      }
      return std::nullopt;
    case SeriesMode::derivative:
      return log_weighted(kernel_id, m, coeff_id, id);
    case SeriesMode::general:
      if (kernel_id == "gamma_squared" && coeff_id == "const_one") {
        return make(id, [](const Abscissa& at) {
          if (at.x < 1e-280) return -at.log_x - 2.0 * specfun::euler_gamma;
          return 2.0 * specfun::bessel_k0(2.0 * std::sqrt(at.x));
        });
      }
      if (kernel_id == "gamma_squared" && coeff_id == "sin_gamma") {
        return make(id, [](const Abscissa& at) { return -pi * std::exp(-at.x); });
      }
      if (int d = int_param(kernel_id, "gamma_deriv:"); d >= 0) return log_weighted("gamma", d, coeff_id, id);
      if (int d = int_param(kernel_id, "pi_csc_deriv:"); d >= 0) return log_weighted("pi_csc", d, coeff_id, id);
      if (int d = int_param(kernel_id, "psi_deriv:"); d >= 0) return log_weighted("psi", d, coeff_id, id);
      if (int p = int_param(kernel_id, "pi_csc_pow:"); p >= 1) {
        // The general-mode series is the conjecture series divided by (-1)^{p-1}(p-1)!.
        auto c = find_closed_form(SeriesMode::conjecture, "", coeff_id, p);
        if (!c) return std::nullopt;
        double f = (p % 2 == 1) ? 1.0 : -1.0;
        for (int i = 2; i < p; ++i) f *= i;
        auto inner = c->f;
        c->f = [inner, f](const Abscissa& at) { return inner(at) / f; };
        c->id = id;
        return c;
      }
      return std::nullopt;
    case SeriesMode::conjecture:
      if (coeff_id == "const_one" || coeff_id.rfind("power_a:", 0) == 0) {
        return conjecture_power(m, coeff_power(coeff_id), id);
      }
      if (coeff_id == "inv_gamma" && m == 2) {
        return make(id, [](const Abscissa& at) { return -specfun::expx_gamma0(at.x); });
      }
      if (coeff_id == "inv_linear" && m == 2) {
        return make(id, [](const Abscissa& at) { return -specfun::re_combo2(at.x) / at.x; }, 1.0);
      }
      if (coeff_id == "inv_linear" && m == 3) {
        return make(id, [](const Abscissa& at) {
          const double l = at.log_x;
          const double li2 = specfun::polylog(2, -at.x).real();
          const double li3 = specfun::polylog(3, -at.x).real();
          return (-2.0 * li3 + 2.0 * l * li2 + (l * l + pi * pi) * std::log1p(at.x)) / at.x;
        }, 1.0);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

struct SeriesHandle::Data {
  std::vector<PrincipalPart> parts;
  std::vector<std::optional<jets::Jet>> jets;
  int available = 0;
};

SeriesHandle::SeriesHandle(KernelFunction kernel, CoefficientFunction coeff, SeriesMode mode, int m,
                           SeriesOptions options)
    : kernel_(std::move(kernel)),
      coeff_(std::move(coeff)),
      mode_(mode),
      m_(m),
      drop_(options.drop_terms),
      max_terms_(options.max_terms) {
  if (max_terms_ < 1) fail(Errc::invalid_parameter, "series: max_terms must be >= 1");
  if (drop_ < 0) fail(Errc::invalid_parameter, "series: drop_terms must be >= 0");
  switch (mode_) {
    case SeriesMode::simple:
      if (!kernel_.simple_poles()) fail(Errc::invalid_parameter, "series: simple mode needs a simple-pole kernel");
      break;
    case SeriesMode::general:
      break;
    case SeriesMode::derivative:
      if (!kernel_.simple_poles()) fail(Errc::invalid_parameter, "series: derivative mode needs a simple-pole base kernel");
      if (m_ < 0 || m_ > jets::max_order) fail(Errc::order_too_high, "series: derivative order outside [0, 20]");
      break;
    case SeriesMode::conjecture:
      if (m_ < 1 || m_ > 8) fail(Errc::invalid_parameter, "series: conjecture order outside [1, 8]");
      if (m_ == 1) {
        mode_ = SeriesMode::simple;
        kernel_ = rmt::kernel("pi_csc");
      }
      break;
  }

  if (options.closed_form) {
    if (options.closed_form->f) closed_ = options.closed_form;
  } else {
    closed_ = find_closed_form(mode_, kernel_.id(), coeff_.id(), m_);
  }
  radius_ = options.radius_hint;
  if (!radius_ && closed_ && std::isfinite(closed_->series_radius)) radius_ = closed_->series_radius;
  if (radius_ && !(*radius_ > 0.0)) fail(Errc::invalid_parameter, "series: radius_hint must be > 0");
  seam_ = radius_ ? std::min(1.0, 0.5 * *radius_) : 1.0;

  auto data = std::make_shared<Data>();
  data->parts.reserve(max_terms_);
  data->jets.reserve(max_terms_);
  for (int k = 0; k < max_terms_; ++k) {
    try {
      PrincipalPart pp = (mode_ == SeriesMode::conjecture) ? PrincipalPart::none(k) : kernel_.principal_part(k);
      int order = -1;
      switch (mode_) {
        case SeriesMode::simple: order = pp.order() > 0 ? 0 : -1; break;
        case SeriesMode::general: order = pp.order() - 1; break;
        case SeriesMode::derivative: order = pp.order() > 0 ? m_ : -1; break;
        case SeriesMode::conjecture: order = m_ - 1; break;
      }
      std::optional<jets::Jet> jet;
      if (order >= 0) jet = coeff_.jet(k, order);
      data->parts.push_back(std::move(pp));
      data->jets.push_back(std::move(jet));
    } catch (const Error&) {
      break;
    }
    data->available = k + 1;
  }
  if (data->available == 0) fail(Errc::invalid_parameter, "series: no usable residue data");
  data_ = std::move(data);
}

int SeriesHandle::available_terms() const noexcept { return data_->available; }

Complex SeriesHandle::term(int k, const Abscissa& at) const {
  if (k < drop_) return 0.0;
  return raw_term(k, at);
}

Complex SeriesHandle::raw_term(int k, const Abscissa& at) const {
  if (k < 0 || k >= max_terms_) fail(Errc::invalid_parameter, "series: term index outside [0, max_terms)");
  if (k >= data_->available) {
    fail(Errc::non_convergence, "series: residue data not representable beyond k = " +
                                    std::to_string(data_->available - 1));
  }
  const auto& jet = data_->jets[k];
  if (!jet) return 0.0;
  const PrincipalPart& pp = data_->parts[k];
  switch (mode_) {
    case SeriesMode::simple:
    case SeriesMode::general:
      return jets::residue_from_principal_part(pp, *jet, at);
    case SeriesMode::derivative: {
      Complex acc = 0.0;
      acc += (pp.residue() * 1.0) * jets::shift_operator_apply(*jet, at.log_x, m_);
      return acc * std::pow(at.x, k);
    }
    case SeriesMode::conjecture: {
      const double sign = (static_cast<long>(m_) * k % 2 == 0) ? 1.0 : -1.0;
      return (sign * jets::pm_operator_apply(*jet, at.log_x, m_)) * std::pow(at.x, k);
    }
  }
  return 0.0;
}

Complex SeriesHandle::term(int k, double x) const {
  if (!(x > 0.0)) fail(Errc::domain, "series: requires x > 0");
  return term(k, Abscissa::from_x(x));
}

Complex SeriesHandle::closed_value(const Abscissa& at) const {
  if (!closed_) fail(Errc::missing_closed_form, "series: no closed form registered");
  Complex v = closed_->f(at);
  if (drop_ > 0) {
    for (int k = drop_ - 1; k >= 0; --k) v -= raw_term(k, at);
  }
  return v;
}

SeriesValue SeriesHandle::sum_series(const Abscissa& at, double tol) const {
  using detail::DoubleDouble;
  using detail::two_sum;
  DoubleDouble re = 0.0;
  DoubleDouble im = 0.0;
  if (at.x == 0.0) {
    const Complex t = drop_ == 0 ? term(0, at) : Complex(0.0);
    return {t, 1, 0.0, std::abs(t), false};
  }
  double max_abs = 0.0;
  double last_abs = 0.0;
  int last_k = -1;
  int quiet = 0;
  double last_tail = 0.0;
  for (int k = drop_; k < max_terms_; ++k) {
    const Complex t = term(k, at);
    if (!is_finite(t)) fail(Errc::non_convergence, "series: non-finite term at k = " + std::to_string(k));
    re += DoubleDouble(t.real());
    im += DoubleDouble(t.imag());
    const double a = std::abs(t);
    if (a == 0.0) {
      // Structural gaps are short; a long run of zeros means the terms underflowed.
      if ((quiet >= 1 && ++quiet >= 2) || k - std::max(last_k, drop_ - 1) >= 8) {
        quiet = 2;
        break;
      }
      continue;
    }
    max_abs = std::max(max_abs, a);
    double q = 1.0;
    if (last_k >= 0) q = std::pow(a / last_abs, 1.0 / (k - last_k));
    last_abs = a;
    last_k = k;
    const Complex s(static_cast<double>(re), static_cast<double>(im));
    const double scale = std::max(std::abs(s), eps * max_abs);
    const double tail = q < 1.0 ? a * q / (1.0 - q) : inf;
    if (a <= tol * scale && tail <= tol * scale) {
      if (++quiet >= 2) return {s, k + 1, tail, max_abs, false};
      last_tail = tail;
    } else {
      quiet = 0;
    }
  }
  if (quiet >= 2) {
    return {Complex(static_cast<double>(re), static_cast<double>(im)), last_k + 1, last_tail, max_abs, false};
  }
  fail(Errc::non_convergence, "series: no convergence within " + std::to_string(max_terms_) + " terms at x = " +
                                  std::to_string(at.x));
}

SeriesValue SeriesHandle::evaluate(const Abscissa& at, double tol) const {
  if (closed_ && at.x > seam_) return {closed_value(at), 0, 0.0, 0.0, true};
  if (!closed_ && radius_ && at.x >= *radius_) {
    fail(Errc::radius_exceeded, "series: x = " + std::to_string(at.x) + " outside the radius and no closed form");
  }
  SeriesValue v = sum_series(at, tol);
  if (closed_ && v.max_term * eps > tol * std::abs(v.value)) return {closed_value(at), 0, 0.0, 0.0, true};
  return v;
}

std::optional<double> SeriesHandle::seam_mismatch(double tol) const {
  if (!closed_) return std::nullopt;
  const Abscissa at = Abscissa::from_x(seam_);
  const Complex a = sum_series(at, tol).value;
  const Complex b = closed_value(at);
  return std::abs(a - b) / std::max(std::abs(b), 1.0);
}

Complex term(const SeriesHandle& h, int k, double x) { return h.term(k, x); }

Complex eval_series(const SeriesHandle& h, double x, double tol) {
  if (!(x > 0.0)) fail(Errc::domain, "eval_series: requires x > 0");
  return h.evaluate(Abscissa::from_x(x), tol).value;
}

namespace {

// Polynomial through (t_i, y_i) evaluated at t = 0.
double neville_zero(std::vector<double> t, std::vector<double> y) {
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      y[i] = (y[i] * t[i - level] - y[i - 1] * t[i]) / (t[i - level] - t[i]);
    }
  }
  return y[n - 1];
}

}  // namespace

LEstimate estimate_L(const KernelFunction& kernel, int k_max, const std::optional<GrowthMeta>& growth) {
  if (!kernel.simple_poles()) fail(Errc::invalid_parameter, "estimate_L: kernel must have simple poles");
  if (k_max < 8) fail(Errc::invalid_parameter, "estimate_L: k_max must be >= 8");
  std::vector<double> ks;
  std::vector<double> vals;
  for (int k = 1; k <= k_max; ++k) {
    const PrincipalPart pp = kernel.principal_part(k);
    if (pp.order() == 0) continue;
    const Complex ph = kernel.phi_eval(Complex(k));
    if (ph == Complex(0.0)) continue;
    const double ratio = std::abs(pp.residue() / ph);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) continue;
    ks.push_back(k);
    vals.push_back(std::pow(ratio, 1.0 / k));
  }
  if (vals.size() < 5) fail(Errc::non_convergence, "estimate_L: fewer than 5 usable root-test values");
  auto extrapolate = [&](std::size_t count) {
    std::vector<double> t(count);
    std::vector<double> y(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = vals.size() - count + i;
      t[i] = 1.0 / ks[j];
      y[i] = vals[j];
    }
    return neville_zero(t, y);
  };
  const double l5 = extrapolate(5);
  const double l4 = extrapolate(4);
  LEstimate est;
  est.L = l5;
  est.divergent = !std::isfinite(l5) || std::fabs(l5 - l4) > 0.05 * std::fabs(l5);
  const double p = growth ? growth->P : 0.0;
  est.radius = std::exp(-p) / l5;
  est.root_values = std::move(vals);
  return est;
}

LEstimate estimate_L(const SeriesHandle& h, int k_max) {
  if (h.mode() != SeriesMode::simple) fail(Errc::invalid_parameter, "estimate_L: series must be in simple mode");
  return estimate_L(h.kernel(), k_max, h.coeff().growth());
}

}  // namespace rmt
