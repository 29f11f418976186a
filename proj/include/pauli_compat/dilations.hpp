#pragma once

#include <array>
#include <vector>

#include "pauli_compat/channels.hpp"
#include "pauli_compat/observables.hpp"

namespace pauli_compat {

/// Minimal Naimark dilation of a binary observable: an isometry T into
/// K = C^{r_+} ⊕ C^{r_-} (outcome blocks ordered +,-) and the dilating PVM,
/// with A(x) = T^dag Â(x) T.
struct NaimarkDilation {
  int dimK;
  ComplexMat T;                  // dimK x dim(H) isometry
  std::vector<HermitianOp> pvm;  // Â(+), Â(-) on K
  std::vector<std::vector<ComplexMat>> spectral_vectors;  // per outcome: phi_{x,k} columns
};

NaimarkDilation naimark_dilate(const BinaryObservable& obs);

/// Least-disturbing channel of an observable, rho -> sum_x Â(x) T rho T^dag Â(x),
/// in Kraus form (operators Â(x)T).
KrausChannel mother_channel(const BinaryObservable& obs);

/// Minimal Stinespring dilation of a Pauli channel: V psi = sum_k (M_k psi) ⊗ e_k
/// with M_k = sqrt(p_k) sigma_k over the nonzero p_k, ancilla basis ordered by
/// ascending sigma index.
struct StinespringDilation {
  int dimK;
  ComplexMat V;  // (2*dimK) x 2 isometry, system-major row index i*dimK + k
  std::vector<int> kraus_basis_labels;
};

StinespringDilation stinespring_dilate(const PauliChannel& ch);

/// Conjugate channel output tr_H[V rho V^dag] on the ancilla.
HermitianOp conjugate_apply(const StinespringDilation& dil, const HermitianOp& rho);

/// Sigma_i = conjugate image of sigma_i on the minimal ancilla space
/// (zero-probability rows/columns truncated away).
std::array<HermitianOp, 3> sigma_operators(const PauliChannel& ch);

/// Same operators embedded on the full 4-dim ancilla index set {0..3};
/// degenerate axes appear as zero matrices. This is the carrier space of
/// primal/dual certificates.
std::array<HermitianOp, 3> sigma_operators_full(const PauliChannel& ch);

/// Conjugate image of the identity, diag(2 p_k), on the full 4-dim space.
HermitianOp sigma_zero_full(const PauliChannel& ch);

/// Observable induced through the conjugate channel:
/// A(x) = sum_{k,l} <e_k|A'(x) e_l> M_k^dag M_l. A' may live on the minimal
/// ancilla space (dim = number of nonzero p_k) or on the full 4-dim space.
BinaryObservable induced_observable(const BinaryObservable& aprime, const PauliChannel& ch);

/// Same map on a single effect, without observable validation.
HermitianOp induced_effect(const HermitianOp& aprime_effect, const PauliChannel& ch);

}  // namespace pauli_compat
