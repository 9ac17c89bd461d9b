#include "check.hpp"
#include "rmt/catalog.hpp"
#include "rmt/jets.hpp"
#include "rmt/specfun.hpp"

using namespace rmt;
using namespace rmt::jets;
using specfun::pi;

TEST_CASE("principal part validation") {
  CHECK(PrincipalPart::none(3).order() == 0);
  CHECK(PrincipalPart::none(3).residue() == Complex(0.0));
  CHECK(PrincipalPart(2, {1.0, 0.5}).coeff(2) == Complex(0.5));
  CHECK(PrincipalPart(2, {1.0, 0.5}).coeff(3) == Complex(0.0));
  CHECK_THROWS_AS(PrincipalPart(-1, {1.0}), Error);
  CHECK_THROWS_AS(PrincipalPart(0, {1.0, 0.0}), Error);
}

TEST_CASE("jet validation") {
  CHECK_THROWS_AS(Jet(0, {}), Error);
  CHECK_THROWS_AS(Jet(-1, {1.0}), Error);
  CHECK_THROWS_AS(Jet(0, {std::nan("")}), Error);
  CHECK(Jet::constant(4, 2.0, 3).order() == 3);
}

TEST_CASE("binomial table") {
  CHECK(binomial(20, 10) == 184756u);
  CHECK(binomial(5, 0) == 1u);
  CHECK(binomial(5, 6) == 0u);
  CHECK_THROWS_AS(binomial(21, 2), Error);
}

TEST_CASE("shift operator") {
  const Jet j(2, {1.5, -0.5, 0.25, 2.0});
  const double L = std::log(0.3);
  CHECK(shift_operator_apply(j, L, 0) == Complex(1.5));
  CHECK_REL(shift_operator_apply(j, L, 1), -0.5 + L * 1.5, 1e-15);
  for (int m = 0; m <= 3; ++m) CHECK(shift_operator_apply(j, 0.0, m) == j[m]);
  CHECK_THROWS_AS(shift_operator_apply(j, L, 4), Error);
  // Applying the first-order operator twice.
  const Jet once = apply_shift(j, L);
  CHECK(once.order() == 2);
  CHECK_REL(shift_operator_apply(once, L, 1), shift_operator_apply(j, L, 2), 1e-14);
  CHECK_REL(shift_operator_apply(apply_shift(once, L), L, 1), shift_operator_apply(j, L, 3), 1e-14);
}

TEST_CASE("shift operator on sin(pi z) Gamma(z+1) at x = 1") {
  const CoefficientFunction g = coefficient("sin_gamma");
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    const Complex v = shift_operator_apply(g.jet(k, 1), 0.0, 1);
    CHECK_REL(v, pi * (k % 2 ? -1.0 : 1.0) * fact, 1e-13);
  }
}

TEST_CASE("P_m polynomials") {
  CHECK(pm_polynomial(1).coeffs == std::vector<double>{1.0});
  CHECK(pm_polynomial(2).coeffs == std::vector<double>{0.0, 1.0});
  const auto p3 = pm_polynomial(3).coeffs;
  REQUIRE(p3.size() == 3);
  CHECK_REL(p3[0], pi * pi, 1e-15);
  CHECK(p3[1] == 0.0);
  CHECK(p3[2] == 1.0);
  const auto p4 = pm_polynomial(4).coeffs;
  REQUIRE(p4.size() == 4);
  CHECK(p4[0] == 0.0);
  CHECK_REL(p4[1], 4 * pi * pi, 1e-15);
  CHECK(p4[2] == 0.0);
  CHECK(p4[3] == 1.0);
  for (int m = 1; m <= 8; ++m) {
    const PmPolynomial p = pm_polynomial(m);
    CHECK(p.degree() == m - 1);
    CHECK(p.coeffs.back() == 1.0);
    for (int i = 0; i <= p.degree(); ++i) {
      if ((i + m - 1) % 2 == 1) CHECK(p.coeffs[i] == 0.0);
    }
    for (double x : {0.3, 1.7, -2.2}) CHECK(p(-x) == ((m - 1) % 2 ? -p(x) : p(x)));
  }
  CHECK_THROWS_AS(pm_polynomial(0), Error);
}

TEST_CASE("P_m operator") {
  const Jet j(1, {0.7, -0.2, 0.4, 0.1});
  const double L = 0.8;
  CHECK(pm_operator_apply(j, L, 1) == Complex(0.7));
  CHECK_REL(pm_operator_apply(j, L, 2), -0.2 + L * 0.7, 1e-15);
  CHECK_REL(pm_operator_apply(Jet::constant(0, 1.0, 2), L, 3), pi * pi + L * L, 1e-15);
  CHECK_THROWS_AS(pm_operator_apply(Jet(0, {1.0}), L, 3), Error);
}

TEST_CASE("residue engine reductions") {
  const Jet j(3, {2.0, 0.5});
  CHECK_REL(residue_from_principal_part(PrincipalPart::simple(3, -0.25), j, 0.6), -0.25 * 2.0 * std::pow(0.6, 3), 1e-15);
  CHECK(residue_from_principal_part(PrincipalPart::none(3), j, 0.6) == Complex(0.0));
  CHECK_THROWS_AS(residue_from_principal_part(PrincipalPart::simple(2, 1.0), j, 0.6), Error);
  CHECK_THROWS_AS(residue_from_principal_part(PrincipalPart(3, {1.0, 1.0, 1.0}), j, 0.6), Error);

  // Only c_{-m-1} = (-1)^m m! r: the m-th shifted derivative times r x^k.
  const Jet g(2, {0.3, -1.1, 0.6, 0.2});
  const double x = 1.7;
  const Complex r = 0.4;
  for (int m = 0; m <= 3; ++m) {
    std::vector<Complex> c(static_cast<std::size_t>(m + 1), 0.0);
    c[static_cast<std::size_t>(m)] = (m % 2 ? -1.0 : 1.0) * std::tgamma(m + 1.0) * r;
    const Complex want = r * shift_operator_apply(g, std::log(x), m) * x * x;
    CHECK_REL(residue_from_principal_part(PrincipalPart(2, c), g, x), want, 1e-14);
  }
}

TEST_CASE("residue engine for Gamma^2") {
  const KernelFunction h = kernel("gamma_squared");
  const Jet g(0, {1.0, 0.0});
  const double e = std::exp(1.0);
  CHECK_REL(residue_from_principal_part(h.principal_part(0), g, e), -(2 * specfun::euler_gamma + 1.0), 1e-15);
  // x^k (g'(k) - (2 gamma - 2 H_k + log x) g(k)) / (k!)^2 with the engine's sign on g'.
  const Jet gk(3, {0.8, 0.3});
  const double x = 0.45;
  const double f = 36.0;
  const Complex want = std::pow(x, 3) * (-0.3 - (2 * specfun::euler_gamma - 2 * specfun::harmonic(3) + std::log(x)) * 0.8) / f;
  CHECK_REL(residue_from_principal_part(h.principal_part(3), gk, x), want, 1e-14);
}

namespace {

// (1/2 pi i) of the integral of h(z) g(-z) x^{-z} over |z + k| = r, trapezoid rule.
Complex contour_residue(const std::function<Complex(Complex)>& h, const std::function<Complex(Complex)>& g, int k,
                        double x, double r = 0.3, int n = 256) {
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex w = std::polar(1.0, 2 * pi * j / n);
    const Complex z = -static_cast<double>(k) + r * w;
    acc += h(z) * g(-z) * std::exp(-z * std::log(x)) * r * w;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

TEST_CASE("residue engine against the contour oracle") {
  const std::vector<std::pair<std::string, std::function<Complex(Complex)>>> kernels = {
      {"gamma", [](Complex z) { return specfun::gamma(z); }},
      {"gamma_squared", [](Complex z) { return specfun::gamma(z) * specfun::gamma(z); }},
      {"pi_csc", [](Complex z) { return pi / specfun::sinpi(z); }},
  };
  for (const std::string gid : {"const_one", "inv_linear", "inv_gamma"}) {
    const CoefficientFunction g = coefficient(gid);
    for (const auto& [kid, heval] : kernels) {
      const KernelFunction h = kernel(kid);
      for (int k = 0; k <= 4; ++k) {
        for (double x : {0.35, 1.0, 2.4}) {
          const Complex engine = residue_from_principal_part(h.principal_part(k), g.jet(k, h.max_pole_order() - 1), x);
          const Complex oracle = contour_residue(heval, [&g](Complex z) { return g.eval(z); }, k, x);
          INFO(kid << " g=" << gid << " k=" << k << " x=" << x);
          CHECK(std::abs(engine - oracle) <= 1e-8 * std::max(1.0, std::abs(oracle)));
        }
      }
    }
  }
}
