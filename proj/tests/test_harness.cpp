#include <algorithm>

#include "check.hpp"
#include "rmt/harness.hpp"
#include "rmt/specfun.hpp"

using namespace rmt;
using specfun::pi;

TEST_CASE("default grid") {
  const std::vector<Complex> g = default_grid({0.0, 1.0});
  REQUIRE(g.size() == 8);
  CHECK_REL(g.front(), 0.1, 1e-15);
  CHECK_REL(g[6], 0.9, 1e-15);
  CHECK(g.back() == Complex(0.5, 0.2));
}

TEST_CASE("every verified identity passes on its default grid") {
  for (const IdentityCase& c : identity_registry()) {
    if (c.expected_status != ExpectedStatus::verified) continue;
    const IdentityReport r = verify(c, {}, c.default_tol);
    INFO(c.id << " max_rel_err=" << r.max_rel_err << " notes=" << r.notes);
    CHECK(r.pass);
    CHECK(r.max_rel_err <= c.default_tol);
  }
}

TEST_CASE("documented examples") {
  IdentityReport r = verify("gamma_bernoulli", {0.25, 0.5, 0.9}, 1e-8);
  CHECK(r.pass);
  REQUIRE(r.samples.size() == 3);
  CHECK_REL(r.samples[1].rhs, std::sqrt(pi), 1e-15);
  r = verify("k0_pi", {0.5}, 1e-8);
  CHECK(r.pass);
  CHECK_REL(r.samples[0].rhs, pi / 2, 1e-15);
  r = verify("cos_mellin:1", {0.3, 0.5, 0.7}, 1e-6);
  CHECK(r.pass);
  CHECK_REL(r.samples[1].rhs, std::sqrt(pi / 2), 1e-14);
  for (const std::string k : {"gamma", "gamma_squared", "pi_csc"}) {
    const QuadResult q = integral_representation(k, 0.5, 1e-10);
    CHECK(q.converged);
    CHECK_REL(q.value, k == "gamma" ? std::sqrt(pi) : pi, 1e-9);
  }
}

TEST_CASE("conjectural instances") {
  IdentityReport r = verify_conjecture(2, "inv_gamma", {0.3, 0.5, 0.7}, 1e-7);
  CHECK(r.pass);
  r = verify_conjecture(2, "inv_linear", {0.4, 0.5, 0.6}, 1e-6);
  CHECK(r.pass);
  REQUIRE(r.samples.size() == 3);
  CHECK_REL(r.samples[1].rhs, -19.739208802178717, 1e-13);
  r = verify_conjecture(3, "inv_linear", {0.5}, 1e-6);
  CHECK(r.pass);
  CHECK_REL(r.samples[0].rhs, 124.02510672119928, 1e-13);
  CHECK_THROWS_AS(verify_conjecture(5, "inv_linear", {0.5}, 1e-6), Error);
  try {
    (void)conjecture_case(4, "inv_gamma");
    FAIL("expected missing_closed_form");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_closed_form);
  }
}

TEST_CASE("the first-order conjecture is the classical identity") {
  const std::vector<Complex> grid = {0.2, 0.5, Complex(0.4, 0.2)};
  for (const std::string g : {"const_one", "inv_gamma", "inv_linear"}) {
    const IdentityReport a = verify_conjecture(1, g, grid, 1e-8);
    const IdentityReport b = verify(classical_case(g), grid, 1e-8);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].lhs == b.samples[i].lhs);
      CHECK(a.samples[i].rhs == b.samples[i].rhs);
    }
  }
}

TEST_CASE("incomplete gamma right-hand sides agree") {
  for (Complex s : default_grid({0.0, 1.0})) CHECK_REL(incgamma_rhs_reflection(s), incgamma_rhs_gamma(s), 1e-12);
}

TEST_CASE("registry listing") {
  const auto ids = list_identities();
  auto find = [&](const std::string& id) {
    return std::find_if(ids.begin(), ids.end(), [&](const IdentityInfo& i) { return i.id == id; });
  };
  CHECK(find("gamma_bernoulli") != ids.end());
  REQUIRE(find("digamma_corollary") != ids.end());
  CHECK(find("digamma_corollary")->expected_status == ExpectedStatus::known_problematic);
  for (const std::string id : {"conj_m2_inv_gamma", "conj_m3_inv_linear"}) {
    REQUIRE(find(id) != ids.end());
    CHECK(find(id)->expected_status == ExpectedStatus::conjectural);
  }
  for (const IdentityInfo& i : ids) CHECK(i.strip.lo < i.strip.hi);
}

TEST_CASE("argument errors") {
  try {
    (void)verify("nope", {0.5}, 1e-8);
    FAIL("expected unknown_id");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_id);
  }
  try {
    (void)verify("gamma_bernoulli", {0.99}, 1e-8);
    FAIL("expected strip_violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::strip_violation);
  }
}

TEST_CASE("parallel verification is deterministic") {
  EvalSettings par;
  par.parallel = true;
  const IdentityReport a = verify("gamma_squared_rep", {}, 1e-8);
  const IdentityReport b = verify("gamma_squared_rep", {}, 1e-8, par);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].s == b.samples[i].s);
    CHECK(a.samples[i].lhs == b.samples[i].lhs);
  }
}

TEST_CASE("known-problematic entries") {
  const IdentityReport d = verify("digamma_corollary", {}, 1e-8);
  CHECK_FALSE(d.pass);
  CHECK(d.numeric_failure());
  REQUIRE(d.samples.size() == 1);
  CHECK(d.samples[0].error == Errc::non_convergence);
  CHECK(d.notes.find("non_convergence") != std::string::npos);

  const IdentityReport b = verify("bernoulli_from_gamma_squared", {}, 1e-8);
  CHECK(b.notes.find("(negative)") != std::string::npos);
  CHECK(b.notes.find("(positive)") != std::string::npos);
  REQUIRE(b.samples.size() == 1);
  CHECK(b.samples[0].lhs.real() < 0.0);
  CHECK(b.samples[0].rhs.real() < 0.0);
  CHECK_REL(b.samples[0].rhs, -5.5683279968317078, 1e-12);
}
