#pragma once

// Interpolation of sequences through the master theorems, and the inequality
// checks on kernels represented by their g = 1 integrals.

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rmt/harness.hpp"

namespace rmt {

/// raw: f = sum (-1)^k c_k x^k, read against pi/sin(pi s).
/// factorial: f = sum (-1)^k c_k x^k / k!, read against Gamma(s).
enum class Normalization { raw, factorial };

std::string_view to_string(Normalization n) noexcept;
Normalization parse_normalization(const std::string& name);

struct SequenceData {
  std::vector<double> values;
  Normalization normalization = Normalization::factorial;
  /// Catalog id of the closed form, empty when none or when supplied directly.
  std::string closed_form_id;
  std::function<double(const Abscissa&)> closed_form;
};

/// Validates N >= 4 (at least five values), finiteness, and resolves
/// closed_form_id. Ids: exp_neg:a, inv_one_plus:a, log1p_over_x, borel_factorial.
SequenceData make_sequence(std::vector<double> values, Normalization normalization,
                           const std::string& closed_form_id = {});
std::function<double(const Abscissa&)> sequence_closed_form(const std::string& id);
std::vector<std::string> sequence_closed_form_ids();

/// |c_k| <= C rho^k from a log-linear fit, and the largest x at which the
/// truncated series is within 1e-3 tol C of its limit.
struct TailCertificate {
  double rho;
  double C;
  double x_cert;
};

TailCertificate certify_tail(const SequenceData& seq, double tol);

struct InterpResult {
  /// g(-s) = M[f](s) / h(s).
  Complex value;
  QuadResult quad;
  Complex kernel_value;
  Normalization normalization;
  std::string kernel_id;
  /// The kernel is not the one the normalization is read against.
  bool convention_mismatch = false;
  TailCertificate certificate;
};

/// Errors: kernel_zero (|h(s)| < 1e-12), missing_closed_form, seam_mismatch,
/// strip_violation (Re s outside (0, 1)), quadrature errors.
InterpResult interpolate(const SequenceData& seq, const std::string& kernel_id, Complex s, double tol,
                         const QuadOptions& options = {});
/// Drops the first N terms; requires -N < Re s < -N + 1. N = 0 is interpolate.
InterpResult interpolate_extended(const SequenceData& seq, const std::string& kernel_id, int N, Complex s, double tol,
                                  const QuadOptions& options = {});

struct WeightReport {
  std::string kernel_id;
  std::vector<std::pair<double, double>> values;
  double min_weight;
  double argmin;
  bool violation;
};

/// Samples the g = 1 series of the kernel; violation below -1e-12.
WeightReport check_weight_nonneg(const std::string& kernel_id, const std::vector<double>& samples);

struct PropertyEntry {
  double x;
  double y;
  /// a for log-convexity, m for supermultiplicativity.
  double param;
  double margin;
};

struct PropertyReport {
  std::string property;
  std::string kernel_id;
  double tol;
  std::vector<PropertyEntry> entries;
  double min_margin;
  std::size_t argmin;
  bool precondition_ok;
  bool pass;
  std::string notes;
};

struct PropertySettings {
  /// Relative tolerance of each integral-representation value.
  double quad_tol = 1e-12;
  EvalSettings eval;
  /// Points at which the weight precondition is sampled.
  std::vector<double> weight_samples = {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0};
};

/// Margin h(x)^a h(y)^(1-a) - h(ax + (1-a)y) per (x, y, a).
PropertyReport check_logconvexity(const std::string& kernel_id, const std::vector<std::array<double, 3>>& triples,
                                  double tol, const PropertySettings& settings = {});
PropertyReport check_logconvexity(const std::function<double(double)>& h, const std::vector<std::array<double, 3>>& triples,
                                  double tol);
/// Margin h_m(x+y) - h_m(x) h_m(y), h_m(x) = h(x+m)/h(m).
PropertyReport check_supermultiplicative(const std::string& kernel_id, double m,
                                         const std::vector<std::pair<double, double>>& pairs, double tol,
                                         const PropertySettings& settings = {});
PropertyReport check_supermultiplicative(const std::function<double(double)>& h, double m,
                                         const std::vector<std::pair<double, double>>& pairs, double tol);

/// SequenceData from CSV with header `k,c_k` (normalization declared by the
/// caller) or from a JSON document {values, normalization, closed_form?}.
SequenceData read_sequence_csv(std::istream& in, Normalization normalization, const std::string& closed_form_id = {});
SequenceData read_sequence_json(std::istream& in);
SequenceData read_sequence_file(const std::string& path, std::optional<Normalization> normalization,
                                const std::string& closed_form_id = {});

}  // namespace rmt
