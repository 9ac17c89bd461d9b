#include "rmt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "rmt/harness.hpp"
#include "rmt/interp.hpp"
#include "rmt/report.hpp"

namespace rmt::cli {

namespace {

constexpr double tol_min = 1e-14;
constexpr double tol_max = 1e-2;

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || !std::isfinite(v)) {
    fail(Errc::parse_error, "'" + text + "' is not a finite number");
  }
  return v;
}

struct Common {
  std::vector<std::string> s_specs;
  std::optional<double> tol;
  std::string format = "json";
  std::string output;
  long max_evals = EvalSettings{}.max_evals;
  int max_terms = EvalSettings{}.max_terms;
  bool parallel = false;

  EvalSettings settings() const { return {max_evals, max_terms, parallel}; }
  std::vector<Complex> grid() const { return s_specs.empty() ? std::vector<Complex>{} : parse_grid(s_specs); }
  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

void add_common(CLI::App* cmd, Common& c, bool with_grid = true) {
  if (with_grid) cmd->add_option("--s", c.s_specs, "s value or lo:hi:count grid; repeatable");
  cmd->add_option("--tol", c.tol, "relative tolerance in [1e-14, 1e-2]");
  cmd->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--output", c.output, "write the report here instead of stdout");
  cmd->add_option("--max-evals", c.max_evals, "integrand evaluation budget per quadrature")->check(CLI::PositiveNumber);
  cmd->add_option("--max-terms", c.max_terms, "series term cap")->check(CLI::PositiveNumber);
  cmd->add_flag("--parallel", c.parallel, "evaluate samples concurrently");
}

void check_tol(double tol) {
  if (!(tol >= tol_min && tol <= tol_max)) fail(Errc::invalid_parameter, "--tol must lie in [1e-14, 1e-2]");
}

bool gating_numeric(const IdentityReport& r) { return !r.pass && r.numeric_failure(); }

void annotate_expected_failure(IdentityReport& r) {
  if (r.pass || r.expected_status != ExpectedStatus::known_problematic) return;
  r.notes = "expected failure (known-problematic identity)" + (r.notes.empty() ? std::string() : "; " + r.notes);
}

int emit(const ReportDocument& doc, const Common& c, std::ostream& out) {
  const std::string text = c.format == "text" ? to_text(doc) : to_json(doc);
  if (c.output.empty()) {
    out << text;
    return exit_pass;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) fail(Errc::invalid_parameter, "cannot write " + c.output);
  f << text;
  return exit_pass;
}

int single_case_exit(const IdentityReport& r) {
  if (r.pass) return exit_pass;
  if (r.expected_status != ExpectedStatus::known_problematic && r.numeric_failure()) return exit_numeric;
  return exit_failed;
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::non_convergence:
    case Errc::acceleration_failure:
    case Errc::singular_integrand:
    case Errc::seam_mismatch:
    case Errc::radius_exceeded:
      return exit_numeric;
    case Errc::kernel_zero:
      return exit_failed;
    default:
      return exit_usage;
  }
}

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  }
  if (text.empty()) fail(Errc::parse_error, "empty s value");
  if (text.back() != 'i') return parse_real(text);
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

std::vector<Complex> parse_grid(const std::vector<std::string>& specs) {
  std::vector<Complex> out;
  for (const auto& spec : specs) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_complex(spec));
      continue;
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos) {
      fail(Errc::parse_error, "grid spec '" + spec + "' must be lo:hi:count");
    }
    const double lo = parse_real(spec.substr(0, c1));
    const double hi = parse_real(spec.substr(c1 + 1, c2 - c1 - 1));
    const double count = parse_real(spec.substr(c2 + 1));
    if (count < 1 || count != std::floor(count) || count > 10000) {
      fail(Errc::parse_error, "grid spec '" + spec + "': count must be an integer in [1, 10000]");
    }
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i) out.emplace_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1), 0.0);
  }
  if (out.empty()) fail(Errc::parse_error, "grid has no points");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residue-driven Mellin transforms and master-theorem identity checks", "rmt"};
  app.require_subcommand(1);

  Common verify_opts;
  std::string identity;
  auto* verify_cmd = app.add_subcommand("verify", "check one registered identity");
  verify_cmd->add_option("--identity", identity, "identity id (see list)")->required();
  add_common(verify_cmd, verify_opts);

  Common all_opts;
  std::vector<std::string> overrides;
  auto* all_cmd = app.add_subcommand("verify-all", "check every registered identity on its default grid");
  all_cmd->add_option("--override", overrides, "per-identity tolerance ID=tol; repeatable");
  add_common(all_cmd, all_opts, false);

  Common mellin_opts;
  std::string m_kernel;
  std::string m_coeff = "const_one";
  std::string m_mode;
  int m_order = 0;
  int m_drop = 0;
  auto* mellin_cmd = app.add_subcommand("mellin", "transform of a synthesized series integrand");
  mellin_cmd->add_option("--kernel", m_kernel, "kernel id")->required();
  mellin_cmd->add_option("--g", m_coeff, "coefficient id");
  mellin_cmd->add_option("--mode", m_mode, "simple, general, derivative or conjecture")
      ->check(CLI::IsMember({"simple", "general", "derivative", "conjecture"}));
  mellin_cmd->add_option("--m", m_order, "derivative order or conjecture power");
  mellin_cmd->add_option("--drop", m_drop, "leading terms removed (extended strip)")->check(CLI::NonNegativeNumber);
  add_common(mellin_cmd, mellin_opts);

  Common interp_opts;
  std::string input;
  std::string normalization;
  std::string closed_form;
  std::string i_kernel;
  int extended = 0;
  auto* interp_cmd = app.add_subcommand("interp", "interpolate a sequence through a kernel");
  interp_cmd->add_option("--input", input, "CSV (k,c_k) or JSON sequence file")->required();
  interp_cmd->add_option("--normalization", normalization, "raw or factorial");
  interp_cmd->add_option("--closed-form", closed_form, "closed form id of the summed series");
  interp_cmd->add_option("--kernel", i_kernel, "kernel id (default follows the normalization)");
  interp_cmd->add_option("--extended", extended, "drop the first N terms, strip (-N, -N+1)")
      ->check(CLI::NonNegativeNumber);
  add_common(interp_cmd, interp_opts);

  Common props_opts;
  std::string p_kernel = "gamma";
  std::string p_check = "all";
  std::vector<std::string> p_x = {"0.2:2.5:5"};
  std::vector<double> p_a = {0.25, 0.5, 0.75};
  std::vector<double> p_m = {0.5, 1.0};
  auto* props_cmd = app.add_subcommand("props", "inequality properties of a kernel's integral representation");
  props_cmd->add_option("--kernel", p_kernel, "kernel id");
  props_cmd->add_option("--check", p_check, "logconvexity, supermultiplicative, weight or all")
      ->check(CLI::IsMember({"logconvexity", "supermultiplicative", "weight", "all"}));
  props_cmd->add_option("--x", p_x, "x and y values as points or lo:hi:count; repeatable");
  props_cmd->add_option("--a", p_a, "log-convexity weights in [0, 1]");
  props_cmd->add_option("--m", p_m, "supermultiplicativity shifts > 0");
  add_common(props_cmd, props_opts, false);

  Common conj_opts;
  int c_m = 2;
  std::string c_g;
  auto* conj_cmd = app.add_subcommand("conjecture", "check the cosecant-power formula for one m and g");
  conj_cmd->add_option("--m", c_m, "power m in [1, 4]")->required();
  conj_cmd->add_option("--g", c_g, "coefficient id")->required();
  add_common(conj_cmd, conj_opts);

  Common list_opts;
  auto* list_cmd = app.add_subcommand("list", "registered identities");
  add_common(list_cmd, list_opts, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "rmt: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (*verify_cmd) {
      const IdentityCase& c = find_identity(identity);
      const double tol = verify_opts.tol_or(c.default_tol);
      check_tol(tol);
      ReportDocument doc;
      doc.command = "verify";
      doc.cases.push_back(verify(c, verify_opts.grid(), tol, verify_opts.settings()));
      annotate_expected_failure(doc.cases[0]);
      if (!doc.cases[0].pass) err << "rmt: " << c.id << " failed: " << doc.cases[0].notes << "\n";
      emit(doc, verify_opts, out);
      return single_case_exit(doc.cases[0]);
    }

    if (*all_cmd) {
      if (all_opts.tol) check_tol(*all_opts.tol);
      std::map<std::string, double> tol_for;
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) fail(Errc::parse_error, "--override expects ID=tol, got '" + o + "'");
        const std::string id = o.substr(0, eq);
        find_identity(id);
        const double t = parse_real(o.substr(eq + 1));
        check_tol(t);
        tol_for[id] = t;
      }
      const auto& registry = identity_registry();
      const EvalSettings settings = all_opts.settings();
      auto run_case = [&](const IdentityCase& c) {
        const auto it = tol_for.find(c.id);
        const double tol = it != tol_for.end() ? it->second : all_opts.tol_or(c.default_tol);
        IdentityReport r = verify(c, {}, tol, settings);
        annotate_expected_failure(r);
        return r;
      };
      ReportDocument doc;
      doc.command = "verify-all";
      if (all_opts.parallel) {
        std::vector<std::future<IdentityReport>> futures;
        for (const auto& c : registry) futures.push_back(std::async(std::launch::async, run_case, std::cref(c)));
        for (auto& f : futures) doc.cases.push_back(f.get());
      } else {
        for (const auto& c : registry) doc.cases.push_back(run_case(c));
      }
      Aggregate agg;
      bool numeric = false;
      for (const auto& r : doc.cases) {
        if (r.expected_status != ExpectedStatus::verified) continue;
        ++agg.gating;
        if (r.pass) ++agg.passed;
        numeric = numeric || gating_numeric(r);
      }
      agg.pass = agg.passed == agg.gating;
      doc.aggregate = agg;
      for (const auto& r : doc.cases) {
        if (!r.pass && r.expected_status == ExpectedStatus::verified) err << "rmt: " << r.id << " failed: " << r.notes << "\n";
      }
      emit(doc, all_opts, out);
      if (agg.pass) return exit_pass;
      return numeric ? exit_numeric : exit_failed;
    }

    if (*mellin_cmd) {
      const double tol = mellin_opts.tol_or(1e-8);
      check_tol(tol);
      const KernelFunction k = kernel(m_kernel);
      const CoefficientFunction g = coefficient(m_coeff);
      SeriesMode mode = k.simple_poles() ? SeriesMode::simple : SeriesMode::general;
      if (m_mode == "simple") mode = SeriesMode::simple;
      if (m_mode == "general") mode = SeriesMode::general;
      if (m_mode == "derivative") mode = SeriesMode::derivative;
      if (m_mode == "conjecture") mode = SeriesMode::conjecture;
      const EvalSettings settings = mellin_opts.settings();
      SeriesOptions so;
      so.max_terms = settings.max_terms;
      so.drop_terms = m_drop;
      const SeriesHandle h(k, g, mode, m_order, so);
      QuadOptions qo;
      qo.max_evals = settings.max_evals;
      qo.strip = m_drop == 0 ? Strip{k.strip().lo, std::min(k.strip().hi, g.delta())}
                             : Strip{-static_cast<double>(m_drop), 1.0 - m_drop};
      std::vector<Complex> grid = mellin_opts.grid();
      if (grid.empty()) grid = {0.5 * (qo.strip->lo + std::min(qo.strip->hi, qo.strip->lo + 2.0))};
      ReportDocument doc;
      doc.command = "mellin";
      bool all_converged = true;
      for (const Complex& s : grid) {
        const QuadResult q = mellin_on_series(h, s, tol, qo);
        ResultEntry e;
        e.label = m_kernel + "/" + m_coeff + "/" + std::string(to_string(mode)) +
                  (m_order ? ":" + std::to_string(m_order) : std::string{});
        e.s = s;
        e.value = q.value;
        if (mode == SeriesMode::simple || mode == SeriesMode::general) e.reference = k.eval(s) * g.eval(-s);
        e.err_abs = q.err_abs;
        e.n_evals = q.n_evals;
        e.converged = q.converged;
        if (!q.converged) {
          e.info.emplace_back("diagnostic", q.diagnostic);
          err << "rmt: s = " << s.real() << ": " << q.diagnostic << "\n";
        }
        all_converged = all_converged && q.converged;
        doc.results.push_back(std::move(e));
      }
      emit(doc, mellin_opts, out);
      return all_converged ? exit_pass : exit_numeric;
    }

    if (*interp_cmd) {
      const double tol = interp_opts.tol_or(1e-8);
      check_tol(tol);
      std::optional<Normalization> norm;
      if (!normalization.empty()) norm = parse_normalization(normalization);
      const SequenceData seq = read_sequence_file(input, norm, closed_form);
      const std::string kid = !i_kernel.empty() ? i_kernel : (seq.normalization == Normalization::raw ? "pi_csc" : "gamma");
      std::vector<Complex> grid = interp_opts.grid();
      if (grid.empty()) grid = {Complex(0.5 - extended)};
      QuadOptions qo;
      qo.max_evals = interp_opts.max_evals;
      ReportDocument doc;
      doc.command = "interp";
      bool all_converged = true;
      for (const Complex& s : grid) {
        const InterpResult r = interpolate_extended(seq, kid, extended, s, tol, qo);
        ResultEntry e;
        e.label = "interp";
        e.s = s;
        e.value = r.value;
        e.err_abs = r.quad.err_abs / std::abs(r.kernel_value);
        e.n_evals = r.quad.n_evals;
        e.converged = r.quad.converged;
        e.info = {{"kernel", kid},
                  {"normalization", std::string(to_string(r.normalization))},
                  {"convention_mismatch", r.convention_mismatch ? "true" : "false"},
                  {"closed_form", seq.closed_form_id},
                  {"extended", std::to_string(extended)}};
        if (r.convention_mismatch) {
          err << "rmt: warning: " << to_string(r.normalization) << " sequences are read against "
              << (r.normalization == Normalization::raw ? "pi_csc" : "gamma") << ", not " << kid << "\n";
        }
        if (!r.quad.converged) {
          e.info.emplace_back("diagnostic", r.quad.diagnostic);
          err << "rmt: s = " << s.real() << ": " << r.quad.diagnostic << "\n";
        }
        all_converged = all_converged && r.quad.converged;
        doc.results.push_back(std::move(e));
      }
      emit(doc, interp_opts, out);
      return all_converged ? exit_pass : exit_numeric;
    }

    if (*props_cmd) {
      const double tol = props_opts.tol_or(1e-9);
      if (!(tol > 0.0)) fail(Errc::invalid_parameter, "--tol must be > 0");
      std::vector<double> xs;
      for (const Complex& z : parse_grid(p_x)) {
        if (z.imag() != 0.0) fail(Errc::parse_error, "--x values must be real");
        xs.push_back(z.real());
      }
      PropertySettings ps;
      ps.eval = props_opts.settings();
      ReportDocument doc;
      doc.command = "props";
      if (p_check == "weight" || p_check == "all") doc.weights.push_back(check_weight_nonneg(p_kernel, xs));
      if (p_check == "logconvexity" || p_check == "all") {
        std::vector<std::array<double, 3>> triples;
        for (double a : p_a) {
          for (double x : xs) {
            for (double y : xs) triples.push_back({x, y, a});
          }
        }
        doc.checks.push_back(check_logconvexity(p_kernel, triples, tol, ps));
      }
      if (p_check == "supermultiplicative" || p_check == "all") {
        std::vector<std::pair<double, double>> pairs;
        for (double x : xs) {
          for (double y : xs) pairs.emplace_back(x, y);
        }
        for (double m : p_m) doc.checks.push_back(check_supermultiplicative(p_kernel, m, pairs, tol, ps));
      }
      emit(doc, props_opts, out);
      const bool ok = std::all_of(doc.checks.begin(), doc.checks.end(), [](const PropertyReport& r) { return r.pass; }) &&
                      std::none_of(doc.weights.begin(), doc.weights.end(), [](const WeightReport& w) { return w.violation; });
      return ok ? exit_pass : exit_failed;
    }

    if (*conj_cmd) {
      const double tol = conj_opts.tol_or(1e-6);
      check_tol(tol);
      ReportDocument doc;
      doc.command = "conjecture";
      doc.cases.push_back(verify_conjecture(c_m, c_g, conj_opts.grid(), tol, conj_opts.settings()));
      if (!doc.cases[0].pass) err << "rmt: conjecture m = " << c_m << ", g = " << c_g << " failed: " << doc.cases[0].notes << "\n";
      emit(doc, conj_opts, out);
      return single_case_exit(doc.cases[0]);
    }

    if (*list_cmd) {
      ReportDocument doc;
      doc.command = "list";
      doc.identities = list_identities();
      emit(doc, list_opts, out);
      return exit_pass;
    }
  } catch (const Error& e) {
    err << "rmt: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return exit_usage;
}

}  // namespace rmt::cli
