#pragma once

// M[f](s) = int_0^inf x^{s-1} f(x) dx by double-exponential quadrature in
// log x, with a between-zeros scheme for oscillatory integrands.

#include <functional>
#include <optional>
#include <string>

#include "rmt/core.hpp"
#include "rmt/series.hpp"

namespace rmt {

struct QuadResult {
  Complex value = 0.0;
  double err_abs = 0.0;
  long n_evals = 0;
  bool converged = false;
  /// Why convergence failed; empty when converged.
  std::string diagnostic;
};

using Integrand = std::function<Complex(const Abscissa&)>;

struct QuadOptions {
  long max_evals = 2'000'000;
  /// When set, Re(s) must lie inside it.
  std::optional<Strip> strip;
};

/// Errors: non_convergence when the evaluation budget runs out,
/// singular_integrand when f is not finite at a node, strip_violation.
/// A transform that reaches its refinement limit, or whose integrand does not
/// decay at an endpoint, returns converged = false with a diagnostic.
QuadResult mellin_transform(const Integrand& f, Complex s, double tol, const QuadOptions& options = {});

/// Requires 0 < Re(s) < 1. Errors: acceleration_failure when the pieces
/// between consecutive zeros stop alternating in sign.
QuadResult mellin_oscillatory(const Integrand& f, Complex s, double tol, const OscillationHint& hint,
                              const QuadOptions& options = {});

/// Transform of the series integrand (closed form past the seam). Dispatches to
/// mellin_oscillatory when the closed form carries an oscillation hint.
/// Errors: seam_mismatch when series and closed form disagree by more than 10 tol.
QuadResult mellin_on_series(const SeriesHandle& h, Complex s, double tol, const QuadOptions& options = {});

}  // namespace rmt
