#pragma once

#include <array>
#include <complex>
#include <vector>

namespace pauli_compat {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 normalized(const Vec3& a);

/// Dense complex matrix, row-major, for the small dimensions this library
/// needs (operators on dim 2 and 4; dilation intermediates up to 8x8 and
/// rectangular isometries).
class ComplexMat {
public:
  ComplexMat() = default;
  ComplexMat(int rows, int cols);

  static ComplexMat identity(int n);
  static ComplexMat zero(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  ComplexMat adjoint() const;
  cplx trace() const;
  double max_abs() const;

  ComplexMat& operator+=(const ComplexMat& o);
  ComplexMat& operator-=(const ComplexMat& o);
  ComplexMat& operator*=(cplx s);

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMat operator+(ComplexMat a, const ComplexMat& b);
ComplexMat operator-(ComplexMat a, const ComplexMat& b);
ComplexMat operator*(cplx s, ComplexMat a);
ComplexMat operator*(const ComplexMat& a, const ComplexMat& b);

/// Kronecker product, first factor major: (a⊗b)(i·rb+k, j·cb+l) = a(i,j)·b(k,l).
ComplexMat tensor(const ComplexMat& a, const ComplexMat& b);

/// Square matrix certified Hermitian at construction: inputs farther than
/// 1e-12 from their own adjoint (max-entry norm) are rejected, accepted ones
/// are symmetrized so downstream code can rely on exact Hermiticity.
class HermitianOp {
public:
  HermitianOp() = default;  // empty placeholder, dim 0
  explicit HermitianOp(const ComplexMat& m);

  static HermitianOp zero(int n) { return HermitianOp(ComplexMat::zero(n, n)); }
  static HermitianOp identity(int n) { return HermitianOp(ComplexMat::identity(n)); }

  const ComplexMat& mat() const { return m_; }
  int dim() const { return m_.rows(); }
  double real_trace() const { return m_.trace().real(); }
  cplx operator()(int i, int j) const { return m_(i, j); }

private:
  ComplexMat m_;
};

struct EigenSystem {
  std::vector<double> eigenvalues;  // descending
  ComplexMat eigenvectors;          // orthonormal columns, column i pairs with eigenvalues[i]
};

/// Pauli matrix sigma_j, j in 0..3 (sigma_0 = identity).
const ComplexMat& sigma(int j);

/// Coefficients (c0,c1,c2,c3) with H = sum_j c_j sigma_j, i.e. c_j = Re tr(H sigma_j)/2.
Vec4 pauli_expand(const HermitianOp& h);

/// Inverse of pauli_expand: sum_j c_j sigma_j.
HermitianOp pauli_compose(const Vec4& c);

HermitianOp bloch_state(const Vec3& r);  // (1 + r.sigma)/2

/// Cyclic Jacobi eigendecomposition. Deterministic: fixed sweep order, columns
/// sorted by descending eigenvalue (stable), each column phase-normalized so
/// its first significant component is real positive.
EigenSystem hermitian_eig(const HermitianOp& h);

double min_eigenvalue(const HermitianOp& h);
bool is_psd(const HermitianOp& h, double tol);

/// Partial traces of an operator on the tensor product C^2 ⊗ C^dimK
/// (system-major index i·dimK + k).
HermitianOp partial_trace_second(const HermitianOp& x, int dimK);
HermitianOp partial_trace_first(const HermitianOp& x, int dimK);

// Same contractions for general (not necessarily Hermitian) matrices.
ComplexMat partial_trace_second(const ComplexMat& x, int dimK);
ComplexMat partial_trace_first(const ComplexMat& x, int dimK);

}  // namespace pauli_compat
