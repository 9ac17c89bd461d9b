#include <future>
#include <vector>

#include "check.hpp"
#include "rmt/mellin.hpp"
#include "rmt/specfun.hpp"

using namespace rmt;
using specfun::pi;

namespace {

Complex exp_neg(const Abscissa& at) { return std::exp(-at.x); }

}  // namespace

TEST_CASE("plain transforms") {
  QuadResult r = mellin_transform(exp_neg, 0.5, 1e-12);
  CHECK(r.converged);
  CHECK_REL(r.value, std::sqrt(pi), 1e-11);
  CHECK(r.err_abs >= 0.0);
  CHECK(r.n_evals > 0);
  r = mellin_transform([](const Abscissa& at) { return 1.0 / (1.0 + at.x); }, 0.5, 1e-12);
  CHECK_REL(r.value, pi, 1e-11);
  r = mellin_transform(
      [](const Abscissa& at) {
        if (at.x < 1e-280) return Complex(-at.log_x - 2.0 * specfun::euler_gamma);
        return Complex(2.0 * specfun::bessel_k0(2.0 * std::sqrt(at.x)));
      },
      0.5, 1e-11);
  CHECK_REL(r.value, pi, 1e-10);
  const Complex s(0.4, 0.3);
  CHECK_REL(mellin_transform(exp_neg, s, 1e-12).value, specfun::gamma(s), 1e-11);
}

TEST_CASE("oscillatory transforms") {
  const Integrand c1 = [](const Abscissa& at) { return std::cos(at.x); };
  const Integrand c2 = [](const Abscissa& at) { return std::cos(2.0 * at.x); };
  QuadResult r = mellin_oscillatory(c1, 0.5, 1e-9, {pi, pi / 2});
  CHECK(r.converged);
  CHECK_REL(r.value, std::sqrt(pi / 2), 1e-8);
  r = mellin_oscillatory(c2, 0.5, 1e-9, {pi / 2, pi / 4});
  CHECK_REL(r.value, std::sqrt(pi / 2) / std::sqrt(2.0), 1e-8);
  double prev = 1.0;
  for (double s : {0.9, 0.95, 0.99}) {
    const double v = mellin_oscillatory(c1, s, 1e-9, {pi, pi / 2}).value.real();
    CHECK_REL(v, specfun::gamma(s) * std::cos(pi * s / 2), 1e-6);
    CHECK(std::fabs(v) < prev);
    prev = std::fabs(v);
  }
  CHECK_THROWS_AS(mellin_oscillatory(c1, 1.2, 1e-9, {pi, pi / 2}), Error);
}

TEST_CASE("transforms of series handles") {
  const SeriesHandle g(kernel("gamma"), coefficient("const_one"), SeriesMode::simple);
  CHECK_REL(mellin_on_series(g, 0.5, 1e-10).value, std::sqrt(pi), 1e-9);
  const SeriesHandle g2(kernel("gamma_squared"), coefficient("const_one"), SeriesMode::general);
  CHECK_REL(mellin_on_series(g2, 0.5, 1e-10).value, pi, 1e-9);
  const SeriesHandle c(kernel("pi_csc"), coefficient("const_one"), SeriesMode::simple);
  CHECK_REL(mellin_on_series(c, 0.5, 1e-10).value, pi, 1e-9);
  const SeriesHandle cos1(kernel("gamma_cos_half"), coefficient("power_a:1"), SeriesMode::simple);
  CHECK_REL(mellin_on_series(cos1, 0.3, 1e-8).value, specfun::gamma(0.3) * std::cos(0.15 * pi), 1e-6);
}

TEST_CASE("scaling law") {
  for (double a : {0.5, 2.0}) {
    for (double s : {0.3, 0.7, 1.5}) {
      const Complex scaled = mellin_transform([a](const Abscissa& at) { return std::exp(-a * at.x); }, s, 1e-12).value;
      const Complex plain = mellin_transform(exp_neg, s, 1e-12).value;
      CHECK_REL(scaled, std::pow(a, -s) * plain, 1e-9);
    }
  }
}

TEST_CASE("reported error is conservative") {
  int hits = 0;
  int total = 0;
  for (int i = 0; i < 10; ++i) {
    const double s = 0.05 + 0.09 * i;
    for (double tol : {1e-6, 1e-10}) {
      const QuadResult a = mellin_transform(exp_neg, s, tol);
      ++total;
      if (std::abs(a.value - specfun::gamma(s)) <= a.err_abs) ++hits;
    }
  }
  for (int i = 0; i < 10; ++i) {
    const double s = 0.1 + 0.08 * i;
    for (double tol : {1e-6, 1e-10}) {
      const QuadResult b = mellin_transform([](const Abscissa& at) { return 1.0 / (1.0 + at.x); }, s, tol);
      ++total;
      if (std::abs(b.value - pi / std::sin(pi * s)) <= b.err_abs) ++hits;
    }
  }
  REQUIRE(total == 40);
  CHECK(hits >= 0.95 * total);
}

TEST_CASE("smoothness in s") {
  const double eps = 1e-4;
  const double tol = 1e-10;
  for (double s : {0.2, 0.5, 0.8}) {
    const Complex a = mellin_transform(exp_neg, s, tol).value;
    const Complex b = mellin_transform(exp_neg, s + eps, tol).value;
    CHECK(std::abs(a - b) <= 2 * eps * std::abs(specfun::gamma_deriv(1, s)) + tol);
  }
}

TEST_CASE("parallel runs match sequential runs") {
  const SeriesHandle h(kernel("gamma_squared"), coefficient("const_one"), SeriesMode::general);
  std::vector<Complex> grid = {0.2, 0.35, 0.5, Complex(0.5, 0.2), 0.65, 0.8};
  std::vector<std::future<QuadResult>> futures;
  for (Complex s : grid) futures.push_back(std::async(std::launch::async, [&h, s] { return mellin_on_series(h, s, 1e-9); }));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const QuadResult par = futures[i].get();
    const QuadResult seq = mellin_on_series(h, grid[i], 1e-9);
    CHECK(par.value == seq.value);
    CHECK(par.err_abs == seq.err_abs);
    CHECK(par.n_evals == seq.n_evals);
  }
}

TEST_CASE("error paths") {
  SeriesOptions wrong;
  wrong.closed_form = ClosedForm{"wrong", [](const Abscissa& at) { return 2.0 * std::exp(-at.x); }};
  const SeriesHandle bad(kernel("gamma"), coefficient("const_one"), SeriesMode::simple, 0, wrong);
  try {
    (void)mellin_on_series(bad, 0.5, 1e-8);
    FAIL("expected seam_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::seam_mismatch);
  }
  QuadOptions opt;
  opt.strip = Strip{0.0, 1.0};
  try {
    (void)mellin_transform(exp_neg, 1.5, 1e-8, opt);
    FAIL("expected strip_violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::strip_violation);
  }
  opt = {};
  opt.max_evals = 10;
  try {
    (void)mellin_transform(exp_neg, 0.5, 1e-12, opt);
    FAIL("expected non_convergence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_convergence);
  }
  try {
    (void)mellin_transform([](const Abscissa&) { return Complex(std::nan("")); }, 0.5, 1e-8);
    FAIL("expected singular_integrand");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_integrand);
  }
  // 1/(1-x) is not integrable across x = 1.
  const QuadResult r = mellin_transform([](const Abscissa& at) { return 1.0 / at.one_minus_x; }, 0.5, 1e-8);
  CHECK_FALSE(r.converged);
}
