#include "rmt/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rmt {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string str(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

const char* boolean(bool b) { return b ? "true" : "false"; }

// Writes `items` as a JSON array, one element per line at `indent`.
template <class T, class F>
void array(std::ostringstream& o, const std::vector<T>& items, const std::string& indent, F&& emit) {
  if (items.empty()) {
    o << "[]";
    return;
  }
  o << "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    o << indent << "  ";
    emit(items[i]);
    o << (i + 1 < items.size() ? ",\n" : "\n");
  }
  o << indent << "]";
}

void case_json(std::ostringstream& o, const IdentityReport& r) {
  o << "{\"id\": " << str(r.id) << ", \"samples\": ";
  array(o, r.samples, "    ", [&](const Sample& s) {
    o << "{\"s_re\": " << num(s.s.real()) << ", \"s_im\": " << num(s.s.imag()) << ", \"lhs_re\": " << num(s.lhs.real())
      << ", \"lhs_im\": " << num(s.lhs.imag()) << ", \"rhs_re\": " << num(s.rhs.real())
      << ", \"rhs_im\": " << num(s.rhs.imag()) << ", \"rel_err\": " << num(s.rel_err)
      << ", \"err_abs\": " << num(s.err_abs) << ", \"n_evals\": " << s.n_evals << "}";
  });
  o << ", \"max_rel_err\": " << num(r.max_rel_err) << ", \"pass\": " << boolean(r.pass)
    << ", \"expected_status\": " << str(to_string(r.expected_status)) << ", \"tol\": " << num(r.tol)
    << ", \"notes\": " << str(r.notes) << "}";
}

void result_json(std::ostringstream& o, const ResultEntry& r) {
  o << "{\"label\": " << str(r.label) << ", \"s_re\": " << num(r.s.real()) << ", \"s_im\": " << num(r.s.imag())
    << ", \"value_re\": " << num(r.value.real()) << ", \"value_im\": " << num(r.value.imag());
  if (r.reference) {
    o << ", \"reference_re\": " << num(r.reference->real()) << ", \"reference_im\": " << num(r.reference->imag());
  }
  o << ", \"err_abs\": " << num(r.err_abs) << ", \"n_evals\": " << r.n_evals << ", \"converged\": " << boolean(r.converged);
  for (const auto& [k, v] : r.info) o << ", " << str(k) << ": " << str(v);
  o << "}";
}

void check_json(std::ostringstream& o, const PropertyReport& r) {
  o << "{\"property\": " << str(r.property) << ", \"kernel\": " << str(r.kernel_id) << ", \"entries\": ";
  array(o, r.entries, "    ", [&](const PropertyEntry& e) {
    o << "{\"x\": " << num(e.x) << ", \"y\": " << num(e.y) << ", \"param\": " << num(e.param)
      << ", \"margin\": " << num(e.margin) << "}";
  });
  o << ", \"min_margin\": " << num(r.min_margin) << ", \"argmin\": " << r.argmin
    << ", \"precondition_ok\": " << boolean(r.precondition_ok) << ", \"pass\": " << boolean(r.pass)
    << ", \"tol\": " << num(r.tol) << ", \"notes\": " << str(r.notes) << "}";
}

void weight_json(std::ostringstream& o, const WeightReport& w) {
  o << "{\"kernel\": " << str(w.kernel_id) << ", \"values\": ";
  array(o, w.values, "    ", [&](const std::pair<double, double>& v) {
    o << "{\"t\": " << num(v.first) << ", \"weight\": " << num(v.second) << "}";
  });
  o << ", \"min_weight\": " << num(w.min_weight) << ", \"argmin\": " << num(w.argmin)
    << ", \"violation\": " << boolean(w.violation) << "}";
}

std::string complex_text(Complex z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  }
  return buf;
}

}  // namespace

std::string to_json(const ReportDocument& doc) {
  std::ostringstream o;
  o << "{\n  \"schema_version\": " << report_schema_version << ",\n  \"command\": " << str(doc.command)
    << ",\n  \"cases\": ";
  array(o, doc.cases, "  ", [&](const IdentityReport& r) { case_json(o, r); });
  if (!doc.results.empty()) {
    o << ",\n  \"results\": ";
    array(o, doc.results, "  ", [&](const ResultEntry& r) { result_json(o, r); });
  }
  if (!doc.checks.empty()) {
    o << ",\n  \"checks\": ";
    array(o, doc.checks, "  ", [&](const PropertyReport& r) { check_json(o, r); });
  }
  if (!doc.weights.empty()) {
    o << ",\n  \"weights\": ";
    array(o, doc.weights, "  ", [&](const WeightReport& w) { weight_json(o, w); });
  }
  if (!doc.identities.empty()) {
    o << ",\n  \"identities\": ";
    array(o, doc.identities, "  ", [&](const IdentityInfo& i) {
      o << "{\"id\": " << str(i.id) << ", \"tags\": [";
      for (std::size_t t = 0; t < i.tags.size(); ++t) o << (t ? ", " : "") << str(i.tags[t]);
      o << "], \"strip_lo\": " << num(i.strip.lo) << ", \"strip_hi\": " << num(i.strip.hi)
        << ", \"expected_status\": " << str(to_string(i.expected_status)) << "}";
    });
  }
  if (doc.aggregate) {
    o << ",\n  \"aggregate\": {\"gating\": " << doc.aggregate->gating << ", \"passed\": " << doc.aggregate->passed
      << ", \"pass\": " << boolean(doc.aggregate->pass) << "}";
  }
  o << "\n}\n";
  return o.str();
}

std::string to_text(const ReportDocument& doc) {
  std::ostringstream o;
  char buf[256];
  for (const auto& r : doc.cases) {
    std::snprintf(buf, sizeof buf, "%-30s %-4s %-17s max_rel_err=%.3g tol=%.3g\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                  std::string(to_string(r.expected_status)).c_str(), r.max_rel_err, r.tol);
    o << buf;
    for (const auto& s : r.samples) {
      std::snprintf(buf, sizeof buf, "  s=%-22s lhs=%-28s rhs=%-28s rel_err=%.3g evals=%ld\n",
                    complex_text(s.s).c_str(), complex_text(s.lhs).c_str(), complex_text(s.rhs).c_str(), s.rel_err,
                    s.n_evals);
      o << buf;
    }
    if (!r.notes.empty()) o << "  notes: " << r.notes << "\n";
  }
  for (const auto& r : doc.results) {
    o << r.label << "  s=" << complex_text(r.s) << "  value=" << complex_text(r.value);
    if (r.reference) o << "  reference=" << complex_text(*r.reference);
    std::snprintf(buf, sizeof buf, "  err_abs=%.3g evals=%ld %s", r.err_abs, r.n_evals,
                  r.converged ? "converged" : "NOT CONVERGED");
    o << buf;
    for (const auto& [k, v] : r.info) o << "  " << k << "=" << v;
    o << "\n";
  }
  for (const auto& c : doc.checks) {
    std::snprintf(buf, sizeof buf, "%s(%s) %s min_margin=%.3g over %zu entries\n", c.property.c_str(),
                  c.kernel_id.c_str(), c.pass ? "PASS" : "FAIL", c.min_margin, c.entries.size());
    o << buf;
    if (!c.notes.empty()) o << "  notes: " << c.notes << "\n";
  }
  for (const auto& w : doc.weights) {
    std::snprintf(buf, sizeof buf, "weight(%s) %s min=%.6g at t=%g\n", w.kernel_id.c_str(),
                  w.violation ? "NEGATIVE" : "nonnegative", w.min_weight, w.argmin);
    o << buf;
  }
  for (const auto& i : doc.identities) {
    std::string tags;
    for (const auto& t : i.tags) tags += (tags.empty() ? "" : ",") + t;
    std::snprintf(buf, sizeof buf, "%-30s %-17s strip=(%g, %g) %s\n", i.id.c_str(),
                  std::string(to_string(i.expected_status)).c_str(), i.strip.lo, i.strip.hi, tags.c_str());
    o << buf;
  }
  if (doc.aggregate) {
    std::snprintf(buf, sizeof buf, "aggregate: %d/%d gating identities pass -> %s\n", doc.aggregate->passed,
                  doc.aggregate->gating, doc.aggregate->pass ? "PASS" : "FAIL");
    o << buf;
  }
  return o.str();
}

}  // namespace rmt
