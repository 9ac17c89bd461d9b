#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rmt/core.hpp"

namespace rmt::detail {

/// Shared evaluation counter; throws non_convergence once `limit` is passed.
struct EvalBudget {
  long limit;
  long used = 0;

  void charge(long n = 1);
};

struct HalfLineResult {
  Complex value = 0.0;
  double err = 0.0;
  /// Sum of |contribution| at the finest level, for roundoff floors.
  double abs_sum = 0.0;
  bool nondecay_low = false;
  bool nondecay_high = false;
};

/// Exp-sinh trapezoid sums on u in (u_min, u_max), u = exp((pi/2) sinh t).
/// Levels halve the step; each call to refine() adds one level.
class ExpSinh {
 public:
  ExpSinh(std::function<Complex(double)> g, double u_min, double u_max, EvalBudget& budget);

  /// Current estimate; the error is the change against the previous level.
  const HalfLineResult& result() const noexcept { return result_; }
  int levels() const noexcept { return levels_; }
  void refine();

 private:
  Complex contribution(double t);

  std::function<Complex(double)> g_;
  double t_lo_;
  double t_hi_;
  double t_a_ = 0.0;
  double t_b_ = 0.0;
  double h_ = 0.5;
  Complex sum_ = 0.0;
  double abs_ = 0.0;
  int levels_ = 0;
  EvalBudget& budget_;
  HalfLineResult result_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

}  // namespace rmt::detail
