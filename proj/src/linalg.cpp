#include "pauli_compat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pauli_compat {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return {a[0] / n, a[1] / n, a[2] / n};
}

ComplexMat::ComplexMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

ComplexMat ComplexMat::identity(int n) {
  ComplexMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMat ComplexMat::zero(int rows, int cols) { return ComplexMat(rows, cols); }

ComplexMat ComplexMat::adjoint() const {
  ComplexMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMat::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMat& ComplexMat::operator+=(const ComplexMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMat& ComplexMat::operator-=(const ComplexMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMat& ComplexMat::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMat operator+(ComplexMat a, const ComplexMat& b) { return a += b; }
ComplexMat operator-(ComplexMat a, const ComplexMat& b) { return a -= b; }
ComplexMat operator*(cplx s, ComplexMat a) { return a *= s; }

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  ComplexMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMat tensor(const ComplexMat& a, const ComplexMat& b) {
  ComplexMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

HermitianOp::HermitianOp(const ComplexMat& m) : m_(m) {
  if (!m.is_square()) throw std::invalid_argument("Hermitian operator must be square");
  double dev = (m - m.adjoint()).max_abs();
  if (dev > 1e-12) throw std::invalid_argument("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  for (int i = 0; i < m_.rows(); ++i) {
    m_(i, i) = m_(i, i).real();
    for (int j = i + 1; j < m_.cols(); ++j) {
      cplx s = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = s;
      m_(j, i) = std::conj(s);
    }
  }
}

const ComplexMat& sigma(int j) {
  static const std::array<ComplexMat, 4> sigmas = [] {
    std::array<ComplexMat, 4> s{ComplexMat(2, 2), ComplexMat(2, 2), ComplexMat(2, 2), ComplexMat(2, 2)};
    s[0](0, 0) = 1.0; s[0](1, 1) = 1.0;
    s[1](0, 1) = 1.0; s[1](1, 0) = 1.0;
    s[2](0, 1) = cplx(0, -1); s[2](1, 0) = cplx(0, 1);
    s[3](0, 0) = 1.0; s[3](1, 1) = -1.0;
    return s;
  }();
  if (j < 0 || j > 3) throw std::invalid_argument("Pauli index out of range");
  return sigmas[j];
}

Vec4 pauli_expand(const HermitianOp& h) {
  if (h.dim() != 2) throw std::invalid_argument("pauli_expand needs a 2x2 operator");
  Vec4 c;
  for (int j = 0; j < 4; ++j) c[j] = (h.mat() * sigma(j)).trace().real() / 2.0;
  return c;
}

HermitianOp pauli_compose(const Vec4& c) {
  ComplexMat m(2, 2);
  for (int j = 0; j < 4; ++j) m += cplx(c[j]) * sigma(j);
  return HermitianOp(m);
}

HermitianOp bloch_state(const Vec3& r) { return pauli_compose({0.5, r[0] / 2, r[1] / 2, r[2] / 2}); }

namespace {

// One cyclic Jacobi sweep target: annihilate H(p,q) with the unitary
// [[c, s·e^{iφ}], [-s·e^{-iφ}, c]] on rows/cols (p,q), where φ = arg H(p,q).
struct Rotation {
  double c;
  cplx s;  // s·e^{iφ}
};

Rotation solve_rotation(double app, double aqq, cplx apq) {
  double habs = std::abs(apq);
  cplx phase = apq / habs;
  double tau = (aqq - app) / (2.0 * habs);
  double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                          : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c * phase};
}

double offdiag_norm(const ComplexMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eig(const HermitianOp& h) {
  int n = h.dim();
  ComplexMat a = h.mat();
  ComplexMat q = ComplexMat::identity(n);

  double scale = std::max(1.0, a.max_abs());
  for (int sweep = 0; sweep < 100 && offdiag_norm(a) > 1e-15 * scale; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        if (std::abs(a(p, r)) <= 1e-300) continue;
        Rotation rot = solve_rotation(a(p, p).real(), a(r, r).real(), a(p, r));
        // A <- J^dag A J and Q <- Q J, J acting on the (p,r) plane.
        for (int k = 0; k < n; ++k) {
          cplx akp = a(k, p), akr = a(k, r);
          a(k, p) = rot.c * akp - std::conj(rot.s) * akr;
          a(k, r) = rot.s * akp + rot.c * akr;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = a(p, k), ark = a(r, k);
          a(p, k) = rot.c * apk - rot.s * ark;
          a(r, k) = std::conj(rot.s) * apk + rot.c * ark;
        }
        for (int k = 0; k < n; ++k) {
          cplx qkp = q(k, p), qkr = q(k, r);
          q(k, p) = rot.c * qkp - std::conj(rot.s) * qkr;
          q(k, r) = rot.s * qkp + rot.c * qkr;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = ComplexMat(n, n);
  for (int c = 0; c < n; ++c) {
    int src = order[c];
    es.eigenvalues[c] = a(src, src).real();
    double colmax = 0.0;
    for (int r = 0; r < n; ++r) colmax = std::max(colmax, std::abs(q(r, src)));
    cplx phase = 1.0;
    for (int r = 0; r < n; ++r) {
      if (std::abs(q(r, src)) > 1e-8 * colmax) {
        phase = std::conj(q(r, src)) / std::abs(q(r, src));
        break;
      }
    }
    for (int r = 0; r < n; ++r) es.eigenvectors(r, c) = phase * q(r, src);
  }
  return es;
}

double min_eigenvalue(const HermitianOp& h) {
  return hermitian_eig(h).eigenvalues.back();
}

bool is_psd(const HermitianOp& h, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  return min_eigenvalue(h) >= -tol;
}

ComplexMat partial_trace_second(const ComplexMat& x, int dimK) {
  if (dimK < 1 || !x.is_square() || x.rows() != 2 * dimK)
    throw std::invalid_argument("partial_trace_second: operator dimension must equal 2*dimK");
  ComplexMat r(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < dimK; ++k) r(i, j) += x(i * dimK + k, j * dimK + k);
  return r;
}

ComplexMat partial_trace_first(const ComplexMat& x, int dimK) {
  if (dimK < 1 || !x.is_square() || x.rows() != 2 * dimK)
    throw std::invalid_argument("partial_trace_first: operator dimension must equal 2*dimK");
  ComplexMat r(dimK, dimK);
  for (int k = 0; k < dimK; ++k)
    for (int l = 0; l < dimK; ++l)
      for (int i = 0; i < 2; ++i) r(k, l) += x(i * dimK + k, i * dimK + l);
  return r;
}

HermitianOp partial_trace_second(const HermitianOp& x, int dimK) {
  return HermitianOp(partial_trace_second(x.mat(), dimK));
}

HermitianOp partial_trace_first(const HermitianOp& x, int dimK) {
  return HermitianOp(partial_trace_first(x.mat(), dimK));
}

}  // namespace pauli_compat
