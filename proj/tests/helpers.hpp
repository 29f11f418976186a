#pragma once

#include <doctest.h>

#include "pauli_compat/linalg.hpp"

namespace pauli_compat::test {

inline double max_diff(const ComplexMat& a, const ComplexMat& b) { return (a - b).max_abs(); }

inline void check_close(const ComplexMat& a, const ComplexMat& b, double tol) {
  CAPTURE(tol);
  CHECK(max_diff(a, b) <= tol);
}

inline void check_close(const HermitianOp& a, const HermitianOp& b, double tol) {
  check_close(a.mat(), b.mat(), tol);
}

inline ComplexMat mat2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMat m(2, 2);
  m(0, 0) = a; m(0, 1) = b;
  m(1, 0) = c; m(1, 1) = d;
  return m;
}

}  // namespace pauli_compat::test
