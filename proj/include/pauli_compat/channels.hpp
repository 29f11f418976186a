#pragma once

#include <array>
#include <vector>

#include "pauli_compat/linalg.hpp"

namespace pauli_compat {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat3_identity();
Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_transpose(const Mat3& a);
double mat3_det(const Mat3& a);
Vec3 mat3_apply(const Mat3& a, const Vec3& v);

/// Pauli channel Psi_p(rho) = sum_j p_j sigma_j rho sigma_j. Components within
/// -1e-12 of zero are clamped to zero; the vector must sum to one (tol 1e-12).
class PauliChannel {
public:
  explicit PauliChannel(const Vec4& p);

  const Vec4& probabilities() const { return p_; }
  double operator[](int j) const { return p_[j]; }

  /// Bloch scaling factors t_j = p0 + p_j - p_k - p_l.
  Vec3 bloch_scalings() const;

private:
  Vec4 p_;
};

HermitianOp apply(const PauliChannel& ch, const HermitianOp& rho);

/// Minimal Kraus operators sqrt(p_k) sigma_k, zero-probability terms dropped.
std::vector<ComplexMat> kraus_min(const PauliChannel& ch);

/// Sigma indices of the minimal Kraus operators, ascending.
std::vector<int> kraus_min_labels(const PauliChannel& ch);

/// The three channels obtained by concatenating with a Pauli unitary:
/// (p1,p0,p3,p2), (p2,p3,p0,p1), (p3,p2,p1,p0).
std::array<PauliChannel, 3> permuted_channels(const PauliChannel& ch);

// Channel families.

/// (1-3p, p, p, p) for p in [0, 1/3]. The full range is a valid channel; the
/// mixture-with-noise interpretation only covers p in [0, 1/4].
PauliChannel depolarizing(double p);
PauliChannel phase_damping(double p);        // (p, 0, 0, 1-p)
PauliChannel measure_and_prepare(double t);  // (1+t, 1-t, 1-t, 1+t)/4
PauliChannel luders_z(double t);             // phase damping with p = (sqrt(1-t^2)+1)/2

/// Channel in Kraus form. General input/output dimensions so the same type
/// carries qubit channels and dilation-space maps; completeness
/// sum_k M_k^dag M_k = id is enforced at construction (tol 1e-10).
class KrausChannel {
public:
  explicit KrausChannel(std::vector<ComplexMat> kraus, double tol = 1e-10);

  const std::vector<ComplexMat>& kraus() const { return kraus_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }

  HermitianOp apply(const HermitianOp& rho) const;

private:
  std::vector<ComplexMat> kraus_;
  int in_dim_;
  int out_dim_;
};

using QubitChannelMap = KrausChannel;

KrausChannel to_kraus_channel(const PauliChannel& ch);
KrausChannel unitary_channel(const ComplexMat& u);

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);
KrausChannel mix(const std::vector<KrausChannel>& channels, const std::vector<double>& weights);

/// Action on the Bloch vector of the unital part: column j is the Pauli
/// expansion of the image of sigma_j. Requires a qubit-to-qubit channel.
Mat3 bloch_matrix(const KrausChannel& ch);
Mat3 bloch_matrix(const PauliChannel& ch);

Mat3 unitary_to_rotation(const ComplexMat& u);

/// SU(2) lift: unitary U with bloch rotation R, i.e. U(r.sigma)U^dag = (Rr).sigma.
ComplexMat rotation_to_unitary(const Mat3& r);

struct UnitalDecomposition {
  ComplexMat U;  // 2x2 unitary
  Vec4 p;
  ComplexMat V;  // 2x2 unitary
};

/// Normal form of a unital qubit channel given by its 3x3 Bloch action:
/// Phi(rho) = U Psi_p(V^dag rho V) U^dag. Rejects inputs whose reconstructed
/// Choi operator is not PSD (tol 1e-9).
UnitalDecomposition unital_decompose(const Mat3& bloch);

/// Bloch matrix of the decomposed channel (for round-trip checks).
Mat3 bloch_matrix(const UnitalDecomposition& d);

}  // namespace pauli_compat
