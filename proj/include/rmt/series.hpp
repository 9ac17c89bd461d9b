#pragma once

// Integrand series f(x) = sum_k term_k(x) synthesized from kernel residue data,
// with truncation control and a closed-form continuation past the radius.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rmt/catalog.hpp"

namespace rmt {

enum class SeriesMode { simple, general, derivative, conjecture };

std::string_view to_string(SeriesMode mode) noexcept;

/// Zeros of an asymptotically periodic f: x_j = first_zero + j * half_period.
struct OscillationHint {
  double half_period;
  double first_zero;
};

struct ClosedForm {
  std::string id;
  std::function<Complex(const Abscissa&)> f;
  /// The series converges for x < series_radius.
  double series_radius = std::numeric_limits<double>::infinity();
  std::optional<OscillationHint> oscillation;
};

/// Registered sum of the series for (mode, kernel, coefficient, m); nullopt if none.
std::optional<ClosedForm> find_closed_form(SeriesMode mode, const std::string& kernel_id,
                                           const std::string& coeff_id, int m);

struct SeriesOptions {
  int max_terms = 400;
  /// Leading terms k < drop_terms removed (extended strips).
  int drop_terms = 0;
  std::optional<double> radius_hint;
  /// Overrides the registered closed form; an empty ClosedForm::f disables it.
  std::optional<ClosedForm> closed_form;
};

struct SeriesValue {
  Complex value;
  int terms_used = 0;
  double tail_bound = 0.0;
  double max_term = 0.0;
  bool from_closed_form = false;
};

struct LEstimate {
  double L;
  /// e^{-P}/L when the coefficient carries growth metadata, else 1/L.
  double radius;
  bool divergent;
  std::vector<double> root_values;
};

/// Immutable description of one integrand series. Residue data and jets are
/// computed once at construction and shared between copies.
class SeriesHandle {
 public:
  SeriesHandle(KernelFunction kernel, CoefficientFunction coeff, SeriesMode mode, int m = 0,
               SeriesOptions options = {});

  const KernelFunction& kernel() const noexcept { return kernel_; }
  const CoefficientFunction& coeff() const noexcept { return coeff_; }
  SeriesMode mode() const noexcept { return mode_; }
  int m() const noexcept { return m_; }
  int drop_terms() const noexcept { return drop_; }
  int max_terms() const noexcept { return max_terms_; }
  const std::optional<ClosedForm>& closed_form() const noexcept { return closed_; }
  std::optional<double> radius_hint() const noexcept { return radius_; }
  /// Below the seam the series is summed; above it the closed form is used.
  double seam() const noexcept { return seam_; }
  /// Number of indices k with usable residue data.
  int available_terms() const noexcept;

  Complex term(int k, const Abscissa& at) const;
  Complex term(int k, double x) const;

  /// Closed form minus the dropped leading terms.
  Complex closed_value(const Abscissa& at) const;

  /// Sums the series at `at` without consulting the closed form.
  SeriesValue sum_series(const Abscissa& at, double tol) const;

  /// Series below the seam, closed form above; closed form also replaces a
  /// sum whose terms cancel beyond what `tol` allows.
  SeriesValue evaluate(const Abscissa& at, double tol) const;

  /// |series - closed form| / max(|closed form|, 1) at the seam; nullopt without closed form.
  std::optional<double> seam_mismatch(double tol) const;

 private:
  struct Data;
  Complex raw_term(int k, const Abscissa& at) const;

  KernelFunction kernel_;
  CoefficientFunction coeff_;
  SeriesMode mode_;
  int m_;
  int drop_;
  int max_terms_;
  std::optional<double> radius_;
  std::optional<ClosedForm> closed_;
  double seam_ = 1.0;
  std::shared_ptr<const Data> data_;
};

Complex term(const SeriesHandle& h, int k, double x);
Complex eval_series(const SeriesHandle& h, double x, double tol);

/// Root-test constant L = lim |Res_{-k}(h) / phi(k)|^{1/k}, extrapolated in 1/k.
LEstimate estimate_L(const KernelFunction& kernel, int k_max,
                     const std::optional<GrowthMeta>& growth = std::nullopt);
LEstimate estimate_L(const SeriesHandle& h, int k_max);

}  // namespace rmt
