#pragma once

// Registry of identities M[f](s) = h(s) g(-s) and the machinery that checks
// them over grids of s.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmt/mellin.hpp"

namespace rmt {

enum class ExpectedStatus { verified, conjectural, known_problematic };

std::string_view to_string(ExpectedStatus status) noexcept;

struct EvalSettings {
  long max_evals = 2'000'000;
  int max_terms = 400;
  /// Evaluate grid points concurrently; results are identical either way.
  bool parallel = false;
};

struct IdentityCase {
  std::string id;
  std::function<QuadResult(Complex s, double tol, const EvalSettings&)> lhs;
  std::function<Complex(Complex s)> rhs;
  Strip strip;
  std::vector<std::string> tags;
  ExpectedStatus expected_status = ExpectedStatus::verified;
  double default_tol = 1e-8;
  /// Empty selects default_grid(strip).
  std::vector<Complex> grid;
  std::string notes;
  /// Extra measurements appended to the report notes.
  std::function<std::string(double tol, const EvalSettings&)> annotate;
};

struct Sample {
  Complex s;
  Complex lhs;
  Complex rhs;
  double rel_err = 0.0;
  double err_abs = 0.0;
  long n_evals = 0;
  bool converged = false;
  std::optional<Errc> error;
  std::string diagnostic;
};

struct IdentityReport {
  std::string id;
  ExpectedStatus expected_status = ExpectedStatus::verified;
  double tol = 0.0;
  std::vector<Sample> samples;
  double max_rel_err = 0.0;
  bool pass = false;
  std::string notes;

  /// Some sample failed for numerical rather than accuracy reasons.
  bool numeric_failure() const;
};

struct IdentityInfo {
  std::string id;
  std::vector<std::string> tags;
  Strip strip;
  ExpectedStatus expected_status;
};

/// 7 points on [lo + w/10, hi - w/10] plus lo + w/2 + 0.2i.
std::vector<Complex> default_grid(const Strip& strip);

const std::vector<IdentityCase>& identity_registry();
const IdentityCase& find_identity(const std::string& id);
std::vector<IdentityInfo> list_identities();

/// Empty grid selects the case's own grid. Errors: unknown_id, strip_violation
/// (a point within 0.02 of a strip edge). Quadrature failures mark the sample.
IdentityReport verify(const IdentityCase& c, const std::vector<Complex>& grid, double tol,
                      const EvalSettings& settings = {});
IdentityReport verify(const std::string& id, const std::vector<Complex>& grid, double tol,
                      const EvalSettings& settings = {});

/// Classical case for pi/sin(pi s) and g; the m = 1 conjecture routes here.
IdentityCase classical_case(const std::string& g_id, std::string id = {});
/// Case for sum (-1)^{mn} [P_m(d/dz + log x) g]_n x^n against
/// (-1)^{m-1} (m-1)! pi^m / sin^m(pi s) g(-s).
IdentityCase conjecture_case(int m, const std::string& g_id, std::string id = {});

IdentityReport verify_conjecture(int m, const std::string& g_id, const std::vector<Complex>& grid, double tol,
                                 const EvalSettings& settings = {});

/// M of the g = 1 series of the kernel at s.
QuadResult integral_representation(const std::string& kernel_id, Complex s, double tol,
                                   const EvalSettings& settings = {});

/// Both displayed right-hand sides of the incomplete-gamma identity.
Complex incgamma_rhs_reflection(Complex s);
Complex incgamma_rhs_gamma(Complex s);

}  // namespace rmt
