#pragma once

#include <complex>

#include "doctest.h"

namespace testing_support {

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testing_support

#define CHECK_CLOSE(got, want, tol) CHECK(testing_support::rel_err((got), (want)) < (tol))
