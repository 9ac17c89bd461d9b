#include "rmt/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rmt/specfun.hpp"

namespace rmt {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double kernel_zero_threshold = 1e-12;
constexpr double weight_floor = -1e-12;

double parse_positive(const std::string& text, const std::string& id) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
    fail(Errc::invalid_parameter, "closed form " + id + ": parameter must be a positive number");
  }
  return v;
}

// sum_{k=from}^{to-1} (-1)^k c_k x^k (/ k!); to < 0 runs through c_N.
double data_series(const SequenceData& seq, double x, int from, int to = -1) {
  double acc = 0.0;
  double p = 1.0;
  const std::size_t end = to < 0 ? seq.values.size() : static_cast<std::size_t>(to);
  for (std::size_t k = 0; k < end; ++k) {
    if (k > 0) p *= (seq.normalization == Normalization::factorial) ? x / static_cast<double>(k) : x;
    if (static_cast<int>(k) < from) continue;
    const double t = seq.values[k] * p;
    acc += (k % 2 == 0) ? t : -t;
  }
  return acc;
}

double tail_bound(const TailCertificate& cert, const SequenceData& seq, double x) {
  const auto n1 = static_cast<double>(seq.values.size());
  const double r = cert.rho * x;
  if (seq.normalization == Normalization::factorial) {
    return cert.C * std::exp(n1 * std::log(r) - std::lgamma(n1 + 1.0) + r);
  }
  if (r >= 1.0) return inf;
  return cert.C * std::exp(n1 * std::log(r)) / (1.0 - r);
}

InterpResult run_interp(const SequenceData& seq, const std::string& kernel_id, int drop, Complex s, double tol,
                        const QuadOptions& options, Strip strip) {
  if (!(tol > 0.0)) fail(Errc::invalid_parameter, "interpolate: tol must be > 0");
  if (!strip.contains(s)) {
    fail(Errc::strip_violation, "interpolate: Re(s) = " + std::to_string(s.real()) + " outside (" +
                                    std::to_string(strip.lo) + ", " + std::to_string(strip.hi) + ")");
  }
  const KernelFunction k = kernel(kernel_id);
  InterpResult out;
  out.kernel_id = kernel_id;
  out.normalization = seq.normalization;
  out.convention_mismatch = kernel_id != (seq.normalization == Normalization::raw ? "pi_csc" : "gamma");
  out.kernel_value = k.eval(s);
  if (std::abs(out.kernel_value) < kernel_zero_threshold) {
    fail(Errc::kernel_zero, "interpolate: |h(s)| below 1e-12 for kernel " + kernel_id);
  }
  out.certificate = certify_tail(seq, tol);
  const double x_cert = out.certificate.x_cert;
  if (std::isfinite(x_cert)) {
    if (!seq.closed_form) {
      fail(Errc::missing_closed_form, "interpolate: the data certify the series only on (0, " +
                                          std::to_string(x_cert) + "]; a closed form is required beyond");
    }
    const Abscissa at = Abscissa::from_x(x_cert);
    const double closed = seq.closed_form(at);
    const double diff = std::fabs(data_series(seq, x_cert, 0) - closed);
    if (diff > 10.0 * tol * std::max(std::fabs(closed), 1e-300) + tail_bound(out.certificate, seq, x_cert)) {
      fail(Errc::seam_mismatch, "interpolate: data and closed form differ by " + std::to_string(diff) +
                                    " at x = " + std::to_string(x_cert));
    }
  }
  const Integrand f = [&seq, drop, x_cert](const Abscissa& at) -> Complex {
    if (at.x <= x_cert) return data_series(seq, at.x, drop);
    double v = seq.closed_form(at);
    if (drop > 0) v -= data_series(seq, at.x, 0, drop);
    return v;
  };
  out.quad = mellin_transform(f, s, tol, options);
  out.value = out.quad.value / out.kernel_value;
  return out;
}

PropertyReport finish(PropertyReport rep, double tol) {
  rep.tol = tol;
  rep.min_margin = inf;
  rep.argmin = 0;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const double m = rep.entries[i].margin;
    if (std::isnan(m)) {
      rep.min_margin = std::numeric_limits<double>::quiet_NaN();
      rep.argmin = i;
      break;
    }
    if (m < rep.min_margin) {
      rep.min_margin = m;
      rep.argmin = i;
    }
  }
  rep.pass = rep.precondition_ok && !std::isnan(rep.min_margin) && rep.min_margin >= -tol;
  return rep;
}

// h through the kernel's own integral representation, memoized per argument.
std::function<double(double)> represented(const std::string& kernel_id, const PropertySettings& settings) {
  auto memo = std::make_shared<std::map<double, double>>();
  return [kernel_id, settings, memo](double x) {
    if (auto it = memo->find(x); it != memo->end()) return it->second;
    const QuadResult q = integral_representation(kernel_id, x, settings.quad_tol, settings.eval);
    if (!q.converged) {
      fail(Errc::non_convergence, "integral representation of " + kernel_id + " at s = " + std::to_string(x) +
                                      ": " + q.diagnostic);
    }
    return memo->emplace(x, q.value.real()).first->second;
  };
}

std::optional<std::string> weight_precondition(const std::string& kernel_id, const PropertySettings& settings) {
  const WeightReport w = check_weight_nonneg(kernel_id, settings.weight_samples);
  if (!w.violation) return std::nullopt;
  return "weight precondition fails: series weight " + std::to_string(w.min_weight) + " at t = " +
         std::to_string(w.argmin) + "; check skipped";
}

}  // namespace

std::string_view to_string(Normalization n) noexcept { return n == Normalization::raw ? "raw" : "factorial"; }

Normalization parse_normalization(const std::string& name) {
  if (name == "raw") return Normalization::raw;
  if (name == "factorial") return Normalization::factorial;
  fail(Errc::invalid_parameter, "normalization must be raw or factorial, got '" + name + "'");
}

std::vector<std::string> sequence_closed_form_ids() {
  return {"exp_neg:a", "inv_one_plus:a", "log1p_over_x", "borel_factorial"};
}

std::function<double(const Abscissa&)> sequence_closed_form(const std::string& id) {
  if (id.rfind("exp_neg:", 0) == 0) {
    const double a = parse_positive(id.substr(8), id);
    return [a](const Abscissa& at) { return std::exp(-a * at.x); };
  }
  if (id.rfind("inv_one_plus:", 0) == 0) {
    const double a = parse_positive(id.substr(13), id);
    return [a](const Abscissa& at) { return 1.0 / (1.0 + a * at.x); };
  }
  if (id == "log1p_over_x") {
    return [](const Abscissa& at) { return at.x < 1e-8 ? 1.0 - 0.5 * at.x : std::log1p(at.x) / at.x; };
  }
  if (id == "borel_factorial") {
    return [](const Abscissa& at) { return at.x < 1e-200 ? 1.0 - at.x : specfun::expx_gamma0(1.0 / at.x) / at.x; };
  }
  fail(Errc::unknown_id, "unknown sequence closed form: " + id);
}

SequenceData make_sequence(std::vector<double> values, Normalization normalization, const std::string& closed_form_id) {
  if (values.size() < 5) fail(Errc::invalid_parameter, "sequence: need c_0..c_N with N >= 4");
  for (double v : values) {
    if (!std::isfinite(v)) fail(Errc::invalid_parameter, "sequence: values must be finite");
  }
  SequenceData seq;
  seq.values = std::move(values);
  seq.normalization = normalization;
  seq.closed_form_id = closed_form_id;
  if (!closed_form_id.empty()) seq.closed_form = sequence_closed_form(closed_form_id);
  return seq;
}

TailCertificate certify_tail(const SequenceData& seq, double tol) {
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < seq.values.size(); ++k) {
    const double a = std::fabs(seq.values[k]);
    if (a == 0.0) continue;
    const auto kd = static_cast<double>(k);
    const double y = std::log(a);
    sk += kd;
    sy += y;
    skk += kd * kd;
    sky += kd * y;
    ++n;
  }
  TailCertificate cert{0.0, 0.0, inf};
  if (n == 0) return cert;
  const double den = n * skk - sk * sk;
  const double slope = (n >= 2 && den != 0.0) ? (n * sky - sk * sy) / den : 0.0;
  cert.rho = std::exp(slope);
  for (std::size_t k = 0; k < seq.values.size(); ++k) {
    cert.C = std::max(cert.C, std::fabs(seq.values[k]) / std::pow(cert.rho, static_cast<double>(k)));
  }
  const double target = 1e-3 * tol * cert.C;
  double lo = -690.0;
  double hi = 690.0;
  if (tail_bound(cert, seq, std::exp(lo)) > target) {
    cert.x_cert = 0.0;
    return cert;
  }
  if (tail_bound(cert, seq, std::exp(hi)) <= target) return cert;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail_bound(cert, seq, std::exp(mid)) <= target ? lo : hi) = mid;
  }
  cert.x_cert = std::exp(lo);
  return cert;
}

InterpResult interpolate(const SequenceData& seq, const std::string& kernel_id, Complex s, double tol,
                         const QuadOptions& options) {
  return interpolate_extended(seq, kernel_id, 0, s, tol, options);
}

InterpResult interpolate_extended(const SequenceData& seq, const std::string& kernel_id, int N, Complex s, double tol,
                                  const QuadOptions& options) {
  if (N < 0) fail(Errc::invalid_parameter, "interpolate_extended: N must be >= 0");
  if (N >= static_cast<int>(seq.values.size())) {
    fail(Errc::invalid_parameter, "interpolate_extended: N exceeds the number of values");
  }
  const Strip strip = N == 0 ? kernel(kernel_id).strip() : Strip{-static_cast<double>(N), 1.0 - N};
  return run_interp(seq, kernel_id, N, s, tol, options, strip);
}

WeightReport check_weight_nonneg(const std::string& kernel_id, const std::vector<double>& samples) {
  const KernelFunction k = kernel(kernel_id);
  const SeriesHandle h(k, coefficient("const_one"), k.simple_poles() ? SeriesMode::simple : SeriesMode::general);
  WeightReport rep{kernel_id, {}, inf, 0.0, false};
  for (double t : samples) {
    if (!(t > 0.0)) fail(Errc::invalid_parameter, "check_weight_nonneg: samples must be > 0");
    const double w = h.evaluate(Abscissa::from_x(t), 1e-12).value.real();
    rep.values.emplace_back(t, w);
    if (w < rep.min_weight) {
      rep.min_weight = w;
      rep.argmin = t;
    }
  }
  rep.violation = rep.min_weight < weight_floor;
  return rep;
}

PropertyReport check_logconvexity(const std::function<double(double)>& h, const std::vector<std::array<double, 3>>& triples,
                                  double tol) {
  PropertyReport rep;
  rep.property = "logconvexity";
  rep.precondition_ok = true;
  for (const auto& [x, y, a] : triples) {
    if (!(x > 0.0) || !(y > 0.0) || !(a >= 0.0 && a <= 1.0)) {
      fail(Errc::invalid_parameter, "check_logconvexity: need x, y > 0 and 0 <= a <= 1");
    }
    const double b = 1.0 - a;
    const double mid = x == y ? x : a * x + b * y;
    const double margin = std::pow(h(x), a) * std::pow(h(y), b) - h(mid);
    rep.entries.push_back({x, y, a, margin});
  }
  return finish(std::move(rep), tol);
}

PropertyReport check_logconvexity(const std::string& kernel_id, const std::vector<std::array<double, 3>>& triples,
                                  double tol, const PropertySettings& settings) {
  if (auto failure = weight_precondition(kernel_id, settings)) {
    PropertyReport rep;
    rep.property = "logconvexity";
    rep.kernel_id = kernel_id;
    rep.precondition_ok = false;
    rep.notes = *failure;
    return finish(std::move(rep), tol);
  }
  PropertyReport rep = check_logconvexity(represented(kernel_id, settings), triples, tol);
  rep.kernel_id = kernel_id;
  return rep;
}

PropertyReport check_supermultiplicative(const std::function<double(double)>& h, double m,
                                         const std::vector<std::pair<double, double>>& pairs, double tol) {
  if (!(m > 0.0)) fail(Errc::invalid_parameter, "check_supermultiplicative: m must be > 0");
  PropertyReport rep;
  rep.property = "supermultiplicative";
  rep.precondition_ok = true;
  const double hm = h(m);
  auto hm_of = [&](double x) { return h(x + m) / hm; };
  for (const auto& [x, y] : pairs) {
    if (!(x >= 0.0) || !(y >= 0.0)) fail(Errc::invalid_parameter, "check_supermultiplicative: need x, y >= 0");
    const double margin = hm_of(x + y) - hm_of(x) * hm_of(y);
    rep.entries.push_back({x, y, m, margin});
  }
  return finish(std::move(rep), tol);
}

PropertyReport check_supermultiplicative(const std::string& kernel_id, double m,
                                         const std::vector<std::pair<double, double>>& pairs, double tol,
                                         const PropertySettings& settings) {
  if (auto failure = weight_precondition(kernel_id, settings)) {
    PropertyReport rep;
    rep.property = "supermultiplicative";
    rep.kernel_id = kernel_id;
    rep.precondition_ok = false;
    rep.notes = *failure;
    return finish(std::move(rep), tol);
  }
  PropertyReport rep = check_supermultiplicative(represented(kernel_id, settings), m, pairs, tol);
  rep.kernel_id = kernel_id;
  return rep;
}

}  // namespace rmt
