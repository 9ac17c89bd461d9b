#pragma once

#include <cmath>
#include <complex>

#include "doctest.h"

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

#define CHECK_REL(got, want, tol) CHECK(rel_err((got), (want)) <= (tol))
#define REQUIRE_REL(got, want, tol) REQUIRE(rel_err((got), (want)) <= (tol))
