#pragma once

#include <cstdint>
#include <utility>

#include "pauli_compat/compatibility.hpp"

namespace pauli_compat {

struct CertificateCheckResult {
  bool feasible;
  double upper_bound;  // tr(lambda), a bound on s_max whenever feasible
};

/// Feasibility of a dual certificate: lambda >= 0 and lambda - m.Sigma >= 0
/// (PSD tolerance tol) and m.n = 1 (tol 1e-10). Checked against the
/// independently rebuilt Sigma operators, not the certificate's provenance.
CertificateCheckResult certificate_check(const DualCertificate& cert, const PauliChannel& ch,
                                         const Vec3& n, double tol = 1e-9);

/// Deterministic orthonormal completion (n1, n2) of a unit vector: n1 from
/// the canonical axis least aligned with n, n2 = n x n1.
std::pair<Vec3, Vec3> orthonormal_completion(const Vec3& n);

struct SearchReport {
  double best_s;
  HermitianOp best_effect;  // 4x4 effect satisfying the primal constraints
  long iterations;
  std::uint64_t seed;
};

/// Randomized primal lower bound: hill climb over rank-2 projections on the
/// 4-dim conjugate space, feasibilized by projecting onto the two direction
/// constraints and line-searching toward id/2. Depends only on
/// (channel, n, iterations, seed).
SearchReport primal_search(const PauliChannel& ch, const Vec3& n, long iterations,
                           std::uint64_t seed);
SearchReport primal_search_serial(const PauliChannel& ch, const Vec3& n, long iterations,
                                  std::uint64_t seed);

struct InstrumentCheck {
  double max_channel_error;      // || sum_x Phi_x(rho) - Psi_p(rho) ||_max
  double max_probability_error;  // | tr Phi_x(rho) - tr rho A(x) |
  long trials;
};

/// Monte-Carlo consistency of the instrument Phi_x(rho) = tr_K[V rho V^dag (1 ⊗ A'(x))]
/// against the direct Kraus sum of the channel and the induced observable.
/// The effects may be perturbed (no observable validation); errors are
/// reported, never thrown.
InstrumentCheck instrument_consistency(const HermitianOp& aprime_plus,
                                       const HermitianOp& aprime_minus, const PauliChannel& ch,
                                       long trials, std::uint64_t seed);
InstrumentCheck instrument_consistency_serial(const HermitianOp& aprime_plus,
                                              const HermitianOp& aprime_minus,
                                              const PauliChannel& ch, long trials,
                                              std::uint64_t seed);

/// Joint-measurability condition for A_{s,n} and A_{t,m} at angle theta:
/// s^2 + t^2 - s^2 t^2 cos^2(theta) <= 1.
bool busch_cross_check(double s, double t, double theta);

}  // namespace pauli_compat
