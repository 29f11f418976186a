#include "pauli_compat/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace pauli_compat {

Mat3 mat3_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat3 mat3_transpose(const Mat3& a) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

double mat3_det(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Vec3 mat3_apply(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += a[i][j] * v[j];
  return r;
}

PauliChannel::PauliChannel(const Vec4& p) : p_(p) {
  double sum = 0.0;
  for (double& x : p_) {
    if (x < 0.0) {
      if (x < -1e-12) throw std::invalid_argument("Pauli channel probability is negative");
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Pauli channel probabilities must sum to one");
}

Vec3 PauliChannel::bloch_scalings() const {
  return {p_[0] + p_[1] - p_[2] - p_[3],
          p_[0] - p_[1] + p_[2] - p_[3],
          p_[0] - p_[1] - p_[2] + p_[3]};
}

HermitianOp apply(const PauliChannel& ch, const HermitianOp& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("Pauli channel acts on 2x2 operators");
  ComplexMat out(2, 2);
  for (int k = 0; k < 4; ++k) {
    if (ch[k] == 0.0) continue;
    out += cplx(ch[k]) * (sigma(k) * rho.mat() * sigma(k));
  }
  return HermitianOp(out);
}

std::vector<ComplexMat> kraus_min(const PauliChannel& ch) {
  std::vector<ComplexMat> ops;
  for (int k = 0; k < 4; ++k)
    if (ch[k] > 0.0) ops.push_back(cplx(std::sqrt(ch[k])) * sigma(k));
  return ops;
}

std::vector<int> kraus_min_labels(const PauliChannel& ch) {
  std::vector<int> labels;
  for (int k = 0; k < 4; ++k)
    if (ch[k] > 0.0) labels.push_back(k);
  return labels;
}

std::array<PauliChannel, 3> permuted_channels(const PauliChannel& ch) {
  const Vec4& p = ch.probabilities();
  return {PauliChannel({p[1], p[0], p[3], p[2]}),
          PauliChannel({p[2], p[3], p[0], p[1]}),
          PauliChannel({p[3], p[2], p[1], p[0]})};
}

PauliChannel depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0 / 3.0 + 1e-15))
    throw std::invalid_argument("depolarizing parameter must lie in [0, 1/3]");
  return PauliChannel({1.0 - 3.0 * p, p, p, p});
}

PauliChannel phase_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("phase damping parameter must lie in [0,1]");
  return PauliChannel({p, 0.0, 0.0, 1.0 - p});
}

PauliChannel measure_and_prepare(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("measure-and-prepare parameter must lie in [0,1]");
  return PauliChannel({(1 + t) / 4, (1 - t) / 4, (1 - t) / 4, (1 + t) / 4});
}

PauliChannel luders_z(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("Lueders parameter must lie in [0,1]");
  return phase_damping(0.5 * (std::sqrt(1.0 - t * t) + 1.0));
}

KrausChannel::KrausChannel(std::vector<ComplexMat> kraus, double tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  in_dim_ = kraus_[0].cols();
  out_dim_ = kraus_[0].rows();
  ComplexMat sum(in_dim_, in_dim_);
  for (const ComplexMat& m : kraus_) {
    if (m.cols() != in_dim_ || m.rows() != out_dim_)
      throw std::invalid_argument("Kraus operators must share one shape");
    sum += m.adjoint() * m;
  }
  if ((sum - ComplexMat::identity(in_dim_)).max_abs() > tol)
    throw std::invalid_argument("Kraus operators are not complete (sum M^dag M != id)");
}

HermitianOp KrausChannel::apply(const HermitianOp& rho) const {
  if (rho.dim() != in_dim_) throw std::invalid_argument("state dimension mismatch");
  ComplexMat out(out_dim_, out_dim_);
  for (const ComplexMat& m : kraus_) out += m * rho.mat() * m.adjoint();
  return HermitianOp(out);
}

KrausChannel to_kraus_channel(const PauliChannel& ch) { return KrausChannel(kraus_min(ch)); }

KrausChannel unitary_channel(const ComplexMat& u) { return KrausChannel({u}); }

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (outer.in_dim() != inner.out_dim())
    throw std::invalid_argument("composition dimension mismatch");
  std::vector<ComplexMat> ops;
  ops.reserve(outer.kraus().size() * inner.kraus().size());
  for (const ComplexMat& a : outer.kraus())
    for (const ComplexMat& b : inner.kraus()) ops.push_back(a * b);
  return KrausChannel(std::move(ops));
}

KrausChannel mix(const std::vector<KrausChannel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size())
    throw std::invalid_argument("mix needs matching channel and weight lists");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw std::invalid_argument("mixture weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to one");
  std::vector<ComplexMat> ops;
  for (size_t i = 0; i < channels.size(); ++i) {
    double w = std::max(weights[i], 0.0);
    if (w == 0.0) continue;
    for (const ComplexMat& m : channels[i].kraus()) ops.push_back(cplx(std::sqrt(w)) * m);
  }
  return KrausChannel(std::move(ops));
}

Mat3 bloch_matrix(const KrausChannel& ch) {
  if (ch.in_dim() != 2 || ch.out_dim() != 2)
    throw std::invalid_argument("Bloch matrix needs a qubit-to-qubit channel");
  Mat3 b{};
  for (int j = 0; j < 3; ++j) {
    Vec4 c = pauli_expand(ch.apply(HermitianOp(sigma(j + 1))));
    for (int i = 0; i < 3; ++i) b[i][j] = c[i + 1];
  }
  return b;
}

Mat3 bloch_matrix(const PauliChannel& ch) {
  Vec3 t = ch.bloch_scalings();
  Mat3 b{};
  for (int i = 0; i < 3; ++i) b[i][i] = t[i];
  return b;
}

Mat3 unitary_to_rotation(const ComplexMat& u) {
  // U sigma_i U^dag = sum_j R[j][i] sigma_j
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    ComplexMat img = u * sigma(i + 1) * u.adjoint();
    for (int j = 0; j < 3; ++j) r[j][i] = 0.5 * (img * sigma(j + 1)).trace().real();
  }
  return r;
}

ComplexMat rotation_to_unitary(const Mat3& r) {
  // Quaternion extraction (Shepperd), then U = w - i(x s1 + y s2 + z s3).
  double t = r[0][0] + r[1][1] + r[2][2];
  double w, x, y, z;
  if (t > 0.0) {
    double s = std::sqrt(t + 1.0) * 2.0;
    w = 0.25 * s;
    x = (r[2][1] - r[1][2]) / s;
    y = (r[0][2] - r[2][0]) / s;
    z = (r[1][0] - r[0][1]) / s;
  } else if (r[0][0] >= r[1][1] && r[0][0] >= r[2][2]) {
    double s = std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]) * 2.0;
    w = (r[2][1] - r[1][2]) / s;
    x = 0.25 * s;
    y = (r[0][1] + r[1][0]) / s;
    z = (r[0][2] + r[2][0]) / s;
  } else if (r[1][1] >= r[2][2]) {
    double s = std::sqrt(1.0 - r[0][0] + r[1][1] - r[2][2]) * 2.0;
    w = (r[0][2] - r[2][0]) / s;
    x = (r[0][1] + r[1][0]) / s;
    y = 0.25 * s;
    z = (r[1][2] + r[2][1]) / s;
  } else {
    double s = std::sqrt(1.0 - r[0][0] - r[1][1] + r[2][2]) * 2.0;
    w = (r[1][0] - r[0][1]) / s;
    x = (r[0][2] + r[2][0]) / s;
    y = (r[1][2] + r[2][1]) / s;
    z = 0.25 * s;
  }
  double qn = std::sqrt(w * w + x * x + y * y + z * z);
  w /= qn; x /= qn; y /= qn; z /= qn;
  ComplexMat u = ComplexMat::identity(2);
  u *= cplx(w);
  u += cplx(0, -x) * sigma(1) + cplx(0, -y) * sigma(2) + cplx(0, -z) * sigma(3);
  return u;
}

namespace {

// Choi operator of the unital channel with Bloch action b (system first leg).
HermitianOp choi_of_bloch(const Mat3& b) {
  // Phi(sigma_0) = sigma_0, Phi(sigma_j) = sum_i b[i][j] sigma_i.
  std::array<ComplexMat, 4> img{ComplexMat(2, 2), ComplexMat(2, 2), ComplexMat(2, 2), ComplexMat(2, 2)};
  img[0] = sigma(0);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) img[j + 1] += cplx(b[i][j]) * sigma(i + 1);

  auto phi = [&](const ComplexMat& m) {
    // complex-linear extension via Pauli coefficients tr(m sigma_j)/2
    ComplexMat out(2, 2);
    for (int j = 0; j < 4; ++j) out += (0.5 * (m * sigma(j)).trace()) * img[j];
    return out;
  };

  ComplexMat choi(4, 4);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      ComplexMat e(2, 2);
      e(k, l) = 1.0;
      ComplexMat fe = phi(e);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) choi(k * 2 + i, l * 2 + j) += fe(i, j);
    }
  choi *= cplx(0.5);
  return HermitianOp(choi);
}

Vec4 probabilities_from_scalings(const Vec3& t) {
  return {(1 + t[0] + t[1] + t[2]) / 4, (1 + t[0] - t[1] - t[2]) / 4,
          (1 - t[0] + t[1] - t[2]) / 4, (1 - t[0] - t[1] + t[2]) / 4};
}

}  // namespace

UnitalDecomposition unital_decompose(const Mat3& bloch) {
  if (!is_psd(choi_of_bloch(bloch), 1e-9))
    throw std::invalid_argument("Bloch matrix is not completely positive as a unital qubit channel");

  // Already in normal form: diagonal CP matrices decompose with U = V = id
  // (complete positivity forces the direct probabilities to be nonnegative).
  double scale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(bloch[i][j]));
  double offdiag = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(bloch[i][j]));
  if (offdiag <= 1e-14 * scale) {
    Vec4 p = probabilities_from_scalings({bloch[0][0], bloch[1][1], bloch[2][2]});
    double sum = 0.0;
    for (double& x : p) {
      x = std::max(x, 0.0);
      sum += x;
    }
    for (double& x : p) x /= sum;
    return {ComplexMat::identity(2), p, ComplexMat::identity(2)};
  }

  // Signed SVD restricted to rotations: eigendecompose B^T B, push determinant
  // corrections into the third singular value.
  ComplexMat btb(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += bloch[k][i] * bloch[k][j];
      btb(i, j) = s;
    }

  // Unitary channel: B itself is a rotation (the improper case is never CP).
  if ((btb - ComplexMat::identity(3)).max_abs() <= 1e-12 && mat3_det(bloch) > 0)
    return {rotation_to_unitary(bloch), {1.0, 0.0, 0.0, 0.0}, ComplexMat::identity(2)};

  EigenSystem es = hermitian_eig(HermitianOp(btb));

  Mat3 xr{};  // right factor, columns = eigenvectors of B^T B
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) xr[r][c] = es.eigenvectors(r, c).real();

  std::array<double, 3> sv{};
  for (int c = 0; c < 3; ++c) sv[c] = std::sqrt(std::max(es.eigenvalues[c], 0.0));

  // Left columns: B x_i / sv_i, completed orthonormally for vanishing values.
  Mat3 wl{};
  double svmax = std::max(sv[0], 1e-300);
  for (int c = 0; c < 3; ++c) {
    Vec3 xc{xr[0][c], xr[1][c], xr[2][c]};
    Vec3 bx = mat3_apply(bloch, xc);
    if (sv[c] > 1e-12 * std::max(1.0, svmax)) {
      for (int r = 0; r < 3; ++r) wl[r][c] = bx[r] / sv[c];
    } else {
      sv[c] = 0.0;
      Vec3 cand{0, 0, 0};
      if (c == 2) {
        Vec3 a{wl[0][0], wl[1][0], wl[2][0]}, b{wl[0][1], wl[1][1], wl[2][1]};
        cand = cross(a, b);
      } else if (c == 1) {
        Vec3 a{wl[0][0], wl[1][0], wl[2][0]};
        int least = 0;
        for (int k = 1; k < 3; ++k)
          if (std::abs(a[k]) < std::abs(a[least])) least = k;
        Vec3 e{0, 0, 0};
        e[least] = 1.0;
        Vec3 c2{e[0] - dot(e, a) * a[0], e[1] - dot(e, a) * a[1], e[2] - dot(e, a) * a[2]};
        cand = normalized(c2);
      } else {
        cand = {1, 0, 0};  // whole matrix is (numerically) zero
      }
      for (int r = 0; r < 3; ++r) wl[r][c] = cand[r];
    }
  }

  double dw = mat3_det(wl) < 0 ? -1.0 : 1.0;
  double dx = mat3_det(xr) < 0 ? -1.0 : 1.0;
  for (int r = 0; r < 3; ++r) {
    wl[r][2] *= dw;
    xr[r][2] *= dx;
  }
  Vec3 t{sv[0], sv[1], dw * dx * sv[2]};

  // The det-corrected diagonal may still violate positivity of p; the sign
  // of any two entries can be flipped by rotating both factors.
  static const std::array<Vec3, 4> flips = {
      Vec3{1, 1, 1}, Vec3{-1, -1, 1}, Vec3{-1, 1, -1}, Vec3{1, -1, -1}};
  for (const Vec3& f : flips) {
    Vec3 tf{f[0] * t[0], f[1] * t[1], f[2] * t[2]};
    Vec4 p = probabilities_from_scalings(tf);
    if (p[0] >= -1e-9 && p[1] >= -1e-9 && p[2] >= -1e-9 && p[3] >= -1e-9) {
      Mat3 wf = wl;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) wf[r][c] *= f[c];
      for (double& x : p) x = std::max(x, 0.0);
      double sum = p[0] + p[1] + p[2] + p[3];
      for (double& x : p) x /= sum;
      return {rotation_to_unitary(wf), p, rotation_to_unitary(xr)};
    }
  }
  throw std::invalid_argument("Bloch matrix is not realizable as a unital qubit channel");
}

Mat3 bloch_matrix(const UnitalDecomposition& d) {
  Mat3 diag{};
  Vec4 pp = d.p;
  diag[0][0] = pp[0] + pp[1] - pp[2] - pp[3];
  diag[1][1] = pp[0] - pp[1] + pp[2] - pp[3];
  diag[2][2] = pp[0] - pp[1] - pp[2] + pp[3];
  return mat3_mul(unitary_to_rotation(d.U), mat3_mul(diag, mat3_transpose(unitary_to_rotation(d.V))));
}

}  // namespace pauli_compat
