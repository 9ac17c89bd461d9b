#include "rmt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "rmt/specfun.hpp"

namespace rmt {

namespace {

using specfun::pi;

constexpr double strip_margin = 0.02;

QuadOptions quad_options(const EvalSettings& settings) {
  QuadOptions q;
  q.max_evals = settings.max_evals;
  return q;
}

SeriesOptions series_options(const EvalSettings& settings, int drop = 0) {
  SeriesOptions o;
  o.max_terms = settings.max_terms;
  o.drop_terms = drop;
  return o;
}

// LHS = M of the series built from (kernel, g, mode, m).
std::function<QuadResult(Complex, double, const EvalSettings&)> series_lhs(std::string kernel_id, std::string g_id,
                                                                           SeriesMode mode, int m = 0,
                                                                           int drop = 0) {
  return [=](Complex s, double tol, const EvalSettings& settings) {
    const SeriesHandle h(kernel(kernel_id), coefficient(g_id), mode, m, series_options(settings, drop));
    return mellin_on_series(h, s, tol, quad_options(settings));
  };
}

std::function<QuadResult(Complex, double, const EvalSettings&)> direct_lhs(Integrand f) {
  return [f = std::move(f)](Complex s, double tol, const EvalSettings& settings) {
    return mellin_transform(f, s, tol, quad_options(settings));
  };
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

const char* sign_word(double v) { return v < 0.0 ? "negative" : (v > 0.0 ? "positive" : "zero"); }

double signed_factorial(int m) {
  double f = (m % 2 == 1) ? 1.0 : -1.0;
  for (int i = 2; i < m; ++i) f *= i;
  return f;
}

IdentityCase make_case(std::string id, std::function<QuadResult(Complex, double, const EvalSettings&)> lhs,
                       std::function<Complex(Complex)> rhs, Strip strip, std::vector<std::string> tags,
                       double tol = 1e-8, std::vector<Complex> grid = {}) {
  IdentityCase c;
  c.id = std::move(id);
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.strip = strip;
  c.tags = std::move(tags);
  c.default_tol = tol;
  c.grid = std::move(grid);
  return c;
}

std::string gamma_squared_sign_note(double tol, const EvalSettings& settings) {
  const Complex s = 0.5;
  const SeriesHandle engine(kernel("gamma_squared"), coefficient("sin_gamma"), SeriesMode::general, 0,
                            series_options(settings));
  const QuadResult lhs = mellin_on_series(engine, s, tol, quad_options(settings));
  const Complex rhs = specfun::gamma(s) * specfun::gamma(s) * coefficient("sin_gamma").eval(-s);
  // The displayed formula carries +g'(k) where the residue has -g'(k). Since
  // g(k) = 0 here its series is the residue series of -g.
  const SeriesHandle displayed(kernel("gamma_squared"), scale(-1.0, coefficient("sin_gamma")), SeriesMode::general, 0,
                               [&] {
                                 SeriesOptions o = series_options(settings);
                                 o.closed_form = ClosedForm{"gamma_squared/displayed",
                                                            [](const Abscissa& at) { return pi * std::exp(-at.x); },
                                                            std::numeric_limits<double>::infinity(), std::nullopt};
                                 return o;
                               }());
  const QuadResult disp = mellin_on_series(displayed, s, tol, quad_options(settings));
  return "measured at s = 0.5: residue-engine LHS = " + fmt("%.12g", lhs.value.real()) + " (" +
         sign_word(lhs.value.real()) + "), RHS Gamma(s)^2 g(-s) = " + fmt("%.12g", rhs.real()) + " (" +
         sign_word(rhs.real()) + "), LHS with the displayed +g'(k) term = " + fmt("%.12g", disp.value.real()) +
         " (" + sign_word(disp.value.real()) + ")";
}

std::vector<IdentityCase> build_registry() {
  std::vector<IdentityCase> r;
  const Strip unit{0.0, 1.0};

  r.push_back(make_case("gamma_bernoulli", series_lhs("gamma", "const_one", SeriesMode::simple),
                        [](Complex s) { return specfun::gamma(s); }, unit, {"theorem", "gamma"}));
  r.push_back(classical_case("const_one", "hardy_ramanujan"));
  for (double a : {1.0, 2.0}) {
    const std::string tag = a == 1.0 ? "1" : "2";
    r.push_back(make_case(
        "cos_mellin:" + tag, series_lhs("gamma_cos_half", "power_a:" + tag, SeriesMode::simple),
        [a](Complex s) { return std::exp(-s * std::log(a)) * specfun::gamma(s) * specfun::cospi(0.5 * s); }, unit,
        {"corollary", "oscillatory"}, 1e-6));
  }
  for (const char* a : {"0.5", "2"}) {
    const double av = std::stod(a);
    r.push_back(make_case(std::string("gamma_power:") + a,
                          series_lhs("gamma", std::string("power_a:") + a, SeriesMode::simple),
                          [av](Complex s) { return specfun::gamma(s) * std::exp(-s * std::log(av)); }, unit,
                          {"corollary", "gamma"}));
  }
  auto gamma_sq = [](Complex s) {
    const Complex g = specfun::gamma(s);
    return g * g;
  };
  r.push_back(make_case("gamma_squared_rep", series_lhs("gamma_squared", "const_one", SeriesMode::general), gamma_sq,
                        unit, {"corollary", "higher_order"}));
  r.push_back(make_case("gamma_squared_pi", series_lhs("gamma_squared", "const_one", SeriesMode::general), gamma_sq,
                        unit, {"corollary", "higher_order"}, 1e-8, {0.5}));
  r.push_back(make_case(
      "k0_pi", direct_lhs([](const Abscissa& at) -> Complex {
        if (at.x < 1e-280) return -0.5 * at.log_x - specfun::euler_gamma;
        return specfun::bessel_k0(2.0 * std::sqrt(at.x));
      }),
      [gamma_sq](Complex s) { return 0.5 * gamma_sq(s); }, unit, {"corollary", "higher_order", "bessel"}, 1e-8, {0.5}));
  for (int m : {1, 2}) {
    r.push_back(make_case("gamma_deriv:" + std::to_string(m), series_lhs("gamma", "const_one", SeriesMode::derivative, m),
                          [m](Complex s) { return specfun::gamma_deriv(m, s); }, unit, {"corollary", "derivative"}));
    std::vector<Complex> grid;
    if (m % 2 == 1) {
      // Odd derivatives of pi/sin(pi s) vanish at s = 1/2.
      for (const Complex& s : default_grid(unit)) {
        if (std::abs(s - 0.5) > 1e-9) grid.push_back(s);
      }
    }
    r.push_back(make_case("csc_deriv:" + std::to_string(m), series_lhs("pi_csc", "const_one", SeriesMode::derivative, m),
                          [m](Complex s) { return specfun::csc_deriv(m, s); }, unit, {"corollary", "derivative"}, 1e-8,
                          std::move(grid)));
  }
  r.push_back(make_case("incgamma_reflection", direct_lhs([](const Abscissa& at) -> Complex {
                          if (at.x < 1e-280) return -at.log_x - specfun::euler_gamma;
                          return specfun::expx_gamma0(at.x);
                        }),
                        incgamma_rhs_reflection, unit, {"conjecture_instance", "incomplete_gamma"}, 1e-7));
  r.push_back(make_case("hardy_extended:1", series_lhs("pi_csc", "const_one", SeriesMode::simple, 0, 1),
                        [](Complex s) { return specfun::csc_deriv(0, s); }, {-1.0, 0.0}, {"theorem", "extended"}));

  for (auto [m, g] : {std::pair{2, "inv_gamma"}, {2, "inv_linear"}, {3, "inv_linear"}, {2, "const_one"},
                      {3, "const_one"}}) {
    r.push_back(conjecture_case(m, g, "conj_m" + std::to_string(m) + "_" + g));
  }

  IdentityCase digamma = make_case("digamma_corollary", series_lhs("psi", "const_one", SeriesMode::simple),
                                   [](Complex s) { return specfun::polygamma(0, s); }, unit, {"corollary", "digamma"});
  digamma.expected_status = ExpectedStatus::known_problematic;
  digamma.grid = {0.5};
  digamma.notes = "g = 1 gives the integrand -1/(1-x), which is not integrable across x = 1; expected failure mode is quadrature non-convergence";
  r.push_back(std::move(digamma));

  IdentityCase bern = make_case("bernoulli_from_gamma_squared",
                                series_lhs("gamma_squared", "sin_gamma", SeriesMode::general),
                                [gamma_sq](Complex s) { return gamma_sq(s) * coefficient("sin_gamma").eval(-s); }, unit,
                                {"corollary", "higher_order", "sign_question"});
  bern.expected_status = ExpectedStatus::known_problematic;
  bern.grid = {0.5};
  bern.notes = "g(z) = sin(pi z) Gamma(z+1) with the Gamma^2 kernel; sign of the recovered Bernoulli integral is in question";
  bern.annotate = gamma_squared_sign_note;
  r.push_back(std::move(bern));
  return r;
}

Sample run_sample(const IdentityCase& c, Complex s, double tol, const EvalSettings& settings) {
  Sample out;
  out.s = s;
  try {
    out.rhs = c.rhs(s);
    const QuadResult q = c.lhs(s, 0.1 * tol, settings);
    out.lhs = q.value;
    out.err_abs = q.err_abs;
    out.n_evals = q.n_evals;
    out.converged = q.converged;
    if (!q.converged) {
      out.error = Errc::non_convergence;
      out.diagnostic = q.diagnostic;
    }
    out.rel_err = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
  } catch (const Error& e) {
    out.converged = false;
    out.error = e.code();
    out.diagnostic = e.what();
    out.rel_err = std::numeric_limits<double>::infinity();
  }
  if (std::isnan(out.rel_err)) out.rel_err = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

std::string_view to_string(ExpectedStatus status) noexcept {
  switch (status) {
    case ExpectedStatus::verified: return "verified";
    case ExpectedStatus::conjectural: return "conjectural";
    case ExpectedStatus::known_problematic: return "known-problematic";
  }
  return "unknown";
}

bool IdentityReport::numeric_failure() const {
  return std::any_of(samples.begin(), samples.end(), [](const Sample& s) {
    return s.error && (*s.error == Errc::non_convergence || *s.error == Errc::acceleration_failure ||
                       *s.error == Errc::singular_integrand || *s.error == Errc::seam_mismatch ||
                       *s.error == Errc::radius_exceeded);
  });
}

std::vector<Complex> default_grid(const Strip& strip) {
  if (!std::isfinite(strip.lo) || !std::isfinite(strip.hi)) {
    fail(Errc::invalid_parameter, "default_grid: strip must be bounded");
  }
  const double w = strip.width();
  const double a = strip.lo + 0.1 * w;
  const double b = strip.hi - 0.1 * w;
  std::vector<Complex> g;
  for (int i = 0; i < 7; ++i) g.emplace_back(a + (b - a) * i / 6.0, 0.0);
  g.emplace_back(strip.lo + 0.5 * w, 0.2);
  return g;
}

const std::vector<IdentityCase>& identity_registry() {
  static const std::vector<IdentityCase> registry = build_registry();
  return registry;
}

const IdentityCase& find_identity(const std::string& id) {
  for (const auto& c : identity_registry()) {
    if (c.id == id) return c;
  }
  fail(Errc::unknown_id, "unknown identity: " + id);
}

std::vector<IdentityInfo> list_identities() {
  std::vector<IdentityInfo> out;
  for (const auto& c : identity_registry()) out.push_back({c.id, c.tags, c.strip, c.expected_status});
  return out;
}

IdentityReport verify(const IdentityCase& c, const std::vector<Complex>& grid_in, double tol,
                      const EvalSettings& settings) {
  if (!(tol > 0.0)) fail(Errc::invalid_parameter, "verify: tol must be > 0");
  std::vector<Complex> grid = grid_in.empty() ? (c.grid.empty() ? default_grid(c.strip) : c.grid) : grid_in;
  for (const Complex& s : grid) {
    if (!c.strip.contains(s, strip_margin)) {
      fail(Errc::strip_violation, "verify " + c.id + ": Re(s) = " + fmt("%g", s.real()) +
                                      " not inside the strip by at least 0.02");
    }
  }
  std::sort(grid.begin(), grid.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  IdentityReport rep;
  rep.id = c.id;
  rep.expected_status = c.expected_status;
  rep.tol = tol;
  if (settings.parallel) {
    std::vector<std::future<Sample>> futures;
    for (const Complex& s : grid) {
      futures.push_back(std::async(std::launch::async, [&c, s, tol, &settings] { return run_sample(c, s, tol, settings); }));
    }
    for (auto& f : futures) rep.samples.push_back(f.get());
  } else {
    for (const Complex& s : grid) rep.samples.push_back(run_sample(c, s, tol, settings));
  }

  rep.pass = true;
  std::string notes = c.notes;
  auto append = [&notes](const std::string& text) {
    if (!notes.empty()) notes += "; ";
    notes += text;
  };
  for (const Sample& s : rep.samples) {
    rep.max_rel_err = std::max(rep.max_rel_err, s.rel_err);
    if (!s.converged || s.error) rep.pass = false;
    if (s.error) {
      append("s = " + fmt("%g", s.s.real()) + (s.s.imag() != 0.0 ? fmt("%+gi", s.s.imag()) : "") + ": " +
             std::string(to_string(*s.error)) + ": " + s.diagnostic);
    }
  }
  if (rep.max_rel_err > tol) rep.pass = false;
  if (c.annotate) {
    try {
      append(c.annotate(tol, settings));
    } catch (const Error& e) {
      append(std::string("annotation failed: ") + e.what());
    }
  }
  rep.notes = std::move(notes);
  return rep;
}

IdentityReport verify(const std::string& id, const std::vector<Complex>& grid, double tol, const EvalSettings& settings) {
  return verify(find_identity(id), grid, tol, settings);
}

IdentityCase classical_case(const std::string& g_id, std::string id) {
  const CoefficientFunction g = coefficient(g_id);
  IdentityCase c = make_case(id.empty() ? "classical:" + g_id : std::move(id),
                             series_lhs("pi_csc", g_id, SeriesMode::simple),
                             [g](Complex s) { return specfun::csc_deriv(0, s) * g.eval(-s); }, {0.0, g.delta()},
                             {"theorem", "classical"});
  return c;
}

IdentityCase conjecture_case(int m, const std::string& g_id, std::string id) {
  if (m < 1 || m > 4) fail(Errc::invalid_parameter, "conjecture: m must lie in [1, 4]");
  if (m == 1) return classical_case(g_id, std::move(id));
  const CoefficientFunction g = coefficient(g_id);
  if (!find_closed_form(SeriesMode::conjecture, "", g_id, m)) {
    fail(Errc::missing_closed_form, "conjecture: no closed form for m = " + std::to_string(m) + ", g = " + g_id);
  }
  const double f = signed_factorial(m);
  IdentityCase c = make_case(
      id.empty() ? "conjecture:m" + std::to_string(m) + ":" + g_id : std::move(id),
      series_lhs("pi_csc_pow:" + std::to_string(m), g_id, SeriesMode::conjecture, m),
      [m, f, g](Complex s) { return f * specfun::csc_power(m, s) * g.eval(-s); }, {0.0, g.delta()}, {"conjecture"},
      1e-6);
  c.expected_status = ExpectedStatus::conjectural;
  return c;
}

IdentityReport verify_conjecture(int m, const std::string& g_id, const std::vector<Complex>& grid, double tol,
                                 const EvalSettings& settings) {
  if (m == 1 && g_id == "const_one") return verify(find_identity("hardy_ramanujan"), grid, tol, settings);
  return verify(conjecture_case(m, g_id), grid, tol, settings);
}

QuadResult integral_representation(const std::string& kernel_id, Complex s, double tol, const EvalSettings& settings) {
  const KernelFunction k = kernel(kernel_id);
  QuadOptions q = quad_options(settings);
  q.strip = k.strip();
  const SeriesMode mode = k.simple_poles() ? SeriesMode::simple : SeriesMode::general;
  const SeriesHandle h(k, coefficient("const_one"), mode, 0, series_options(settings));
  return mellin_on_series(h, s, tol, q);
}

Complex incgamma_rhs_reflection(Complex s) { return pi * specfun::gamma(s) / specfun::sinpi(s); }

Complex incgamma_rhs_gamma(Complex s) {
  const Complex sn = specfun::sinpi(s);
  return pi * pi / (sn * sn) * specfun::rgamma(1.0 - s);
}

}  // namespace rmt
