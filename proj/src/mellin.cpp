#include "rmt/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadrature.hpp"

namespace rmt {

namespace {

using detail::EvalBudget;
using detail::ExpSinh;

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double u_min = 1e-250;
constexpr double u_max_low = 1e8;
constexpr double u_max_high = 700.0;
constexpr int min_levels = 3;
constexpr int max_levels = 12;
constexpr int gl_points = 24;
constexpr int max_intervals = 2000;

void check_args(Complex s, double tol, const QuadOptions& options) {
  if (!is_finite(s)) fail(Errc::domain, "mellin: non-finite s");
  if (!(tol > 0.0)) fail(Errc::invalid_parameter, "mellin: tol must be > 0");
  if (options.max_evals < 1) fail(Errc::invalid_parameter, "mellin: max_evals must be >= 1");
  if (options.strip && !options.strip->contains(s)) {
    fail(Errc::strip_violation, "mellin: Re(s) = " + std::to_string(s.real()) + " outside the strip");
  }
}

Complex weighted(const Integrand& f, Complex s, double log_x) {
  const Complex v = f(Abscissa::from_log(log_x));
  if (v == Complex(0.0)) return 0.0;
  return v * std::exp(s * log_x);
}

std::string nondecay_message(const char* where) {
  return std::string("integrand does not decay toward ") + where + "; the transform does not exist";
}

// Epsilon-algorithm estimate of the limit of `s`, from its highest even column.
Complex wynn_epsilon(const std::vector<Complex>& s) {
  std::vector<Complex> prev(s.size() + 1, 0.0);
  std::vector<Complex> cur = s;
  Complex best = s.back();
  for (std::size_t k = 1; cur.size() > 1; ++k) {
    std::vector<Complex> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const Complex d = cur[j + 1] - cur[j];
      if (d == Complex(0.0)) return (k % 2 == 1) ? cur[j + 1] : best;
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (k % 2 == 0) best = next.back();
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

}  // namespace

QuadResult mellin_transform(const Integrand& f, Complex s, double tol, const QuadOptions& options) {
  check_args(s, tol, options);
  EvalBudget budget{options.max_evals};
  // x = e^{-u} on (0, 1] and x = e^{u} on [1, inf).
  const double low_cap = s.real() < 0.0 ? std::min(u_max_low, 700.0 / -s.real()) : u_max_low;
  ExpSinh lower([&](double u) { return weighted(f, s, -u); }, u_min, low_cap, budget);
  ExpSinh upper([&](double u) { return weighted(f, s, u); }, u_min, u_max_high, budget);

  QuadResult out;
  for (int level = 0; level < max_levels; ++level) {
    lower.refine();
    upper.refine();
    const auto& lo = lower.result();
    const auto& up = upper.result();
    out.value = lo.value + up.value;
    out.err_abs = lo.err + up.err + 10.0 * eps * (lo.abs_sum + up.abs_sum);
    out.n_evals = budget.used;
    if (lo.nondecay_low || up.nondecay_low) {
      out.diagnostic = nondecay_message("x = 1");
      return out;
    }
    if (lo.nondecay_high) {
      out.diagnostic = nondecay_message("x = 0");
      return out;
    }
    if (up.nondecay_high) {
      out.diagnostic = nondecay_message("x = infinity");
      return out;
    }
    if (level + 1 >= min_levels && out.err_abs <= tol * std::abs(out.value)) {
      out.converged = true;
      return out;
    }
  }
  out.diagnostic = "quadrature: refinement limit reached with err_abs = " + std::to_string(out.err_abs);
  return out;
}

QuadResult mellin_oscillatory(const Integrand& f, Complex s, double tol, const OscillationHint& hint,
                              const QuadOptions& options) {
  check_args(s, tol, options);
  if (!(s.real() > 0.0 && s.real() < 1.0)) {
    fail(Errc::strip_violation, "mellin_oscillatory: requires 0 < Re(s) < 1");
  }
  if (!(hint.half_period > 0.0) || !(hint.first_zero > 0.0)) {
    fail(Errc::invalid_parameter, "mellin_oscillatory: half_period and first_zero must be > 0");
  }
  EvalBudget budget{options.max_evals};
  const double warm_end = std::max(4.0 * hint.half_period, 1.0);
  const double j0 = std::max(0.0, std::ceil((warm_end - hint.first_zero) / hint.half_period));
  const double x0 = hint.first_zero + j0 * hint.half_period;
  const double log_x0 = std::log(x0);

  // (0, x0] with x = x0 e^{-u}.
  ExpSinh warm([&](double u) { return weighted(f, s, log_x0 - u); }, u_min, u_max_low, budget);
  QuadResult out;
  for (int level = 0;; ++level) {
    warm.refine();
    const auto& r = warm.result();
    if (r.nondecay_high) {
      out.value = r.value;
      out.n_evals = budget.used;
      out.diagnostic = nondecay_message("x = 0");
      return out;
    }
    const double err = r.err + 10.0 * eps * r.abs_sum;
    if (level + 1 >= min_levels && err <= 0.01 * tol * std::abs(r.value)) break;
    if (level + 1 >= max_levels) {
      out.value = r.value;
      out.err_abs = err;
      out.n_evals = budget.used;
      out.diagnostic = "mellin_oscillatory: warm-up region did not converge";
      return out;
    }
  }
  const Complex warm_value = warm.result().value;
  const double warm_err = warm.result().err + 10.0 * eps * warm.result().abs_sum;

  const auto& gl = detail::gauss_legendre(gl_points);
  const double half = 0.5 * hint.half_period;
  std::vector<Complex> partial = {warm_value};
  Complex running = warm_value;
  Complex prev_piece = 0.0;
  Complex prev_est = warm_value;
  int quiet = 0;
  for (int j = 0; j < max_intervals; ++j) {
    const double a = x0 + j * hint.half_period;
    const double mid = a + half;
    Complex piece = 0.0;
    budget.charge(gl_points);
    for (const auto& [node, w] : gl) {
      const double x = mid + half * node;
      piece += w * weighted(f, s, std::log(x)) / x;
    }
    piece *= half;
    if (!is_finite(piece)) fail(Errc::singular_integrand, "mellin_oscillatory: non-finite piece");
    if (j > 0 && (prev_piece * std::conj(piece)).real() >= 0.0) {
      fail(Errc::acceleration_failure, "mellin_oscillatory: pieces stop alternating beyond x = " + std::to_string(a));
    }
    prev_piece = piece;
    running += piece;
    partial.push_back(running);
    if (partial.size() < 8) continue;
    const std::size_t window = std::min<std::size_t>(partial.size(), 17);
    const std::vector<Complex> tail(partial.end() - static_cast<long>(window), partial.end());
    const Complex est = wynn_epsilon(tail);
    const double diff = std::abs(est - prev_est);
    prev_est = est;
    out.value = est;
    out.err_abs = diff + warm_err + 10.0 * eps * std::abs(running);
    out.n_evals = budget.used;
    if (out.err_abs <= tol * std::abs(est)) {
      if (++quiet >= 2) {
        out.converged = true;
        return out;
      }
    } else {
      quiet = 0;
    }
  }
  out.diagnostic = "mellin_oscillatory: accelerated partial sums did not settle";
  return out;
}

QuadResult mellin_on_series(const SeriesHandle& h, Complex s, double tol, const QuadOptions& options) {
  if (!(tol > 0.0)) fail(Errc::invalid_parameter, "mellin: tol must be > 0");
  const double series_tol = std::max(1e-2 * tol, 1e-14);
  if (const auto mismatch = h.seam_mismatch(series_tol); mismatch && *mismatch > 10.0 * tol) {
    fail(Errc::seam_mismatch, "mellin_on_series: series and closed form differ by " + std::to_string(*mismatch) +
                                  " at x = " + std::to_string(h.seam()));
  }
  const Integrand f = [&h, series_tol](const Abscissa& at) { return h.evaluate(at, series_tol).value; };
  if (h.closed_form() && h.closed_form()->oscillation) {
    return mellin_oscillatory(f, s, tol, *h.closed_form()->oscillation, options);
  }
  return mellin_transform(f, s, tol, options);
}

}  // namespace rmt
