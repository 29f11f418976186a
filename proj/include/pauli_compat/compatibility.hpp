#pragma once

#include <array>
#include <vector>

#include "pauli_compat/channels.hpp"
#include "pauli_compat/observables.hpp"

namespace pauli_compat {

/// The functionals p_±[j] = 2(sqrt(p_0 p_j) ± sqrt(p_k p_l)), j,k,l distinct.
struct PPlusMinus {
  Vec3 p_plus;
  Vec3 p_minus;
};

PPlusMinus p_plus_minus(const PauliChannel& ch);

struct CompatibilityVerdict {
  bool compatible;
  double s_max;
  double ellipsoid_lhs;                 // sum over non-degenerate axes
  std::array<bool, 3> degenerate_axes;  // p_+[j] = 0
};

/// Largest sharpness along n compatible with the channel:
/// (sum_j n_j^2 / p_+[j]^2)^(-1/2), taken over non-degenerate axes; zero when
/// n has weight on an axis with p_+[j] = 0 (only the trivial observable
/// survives there).
double s_max(const PauliChannel& ch, const Vec3& n);

/// Closed-form verdict: compatible iff ellipsoid_lhs <= 1 + tol, with
/// degenerate axes demanding s*|n_j| <= 1e-12.
CompatibilityVerdict is_compatible(const UnbiasedBinaryObservable& obs, const PauliChannel& ch,
                                   double tol = 1e-12);

/// Optimal primal point: the rank-2 projection A'(+) on the full 4-dim
/// conjugate space inducing A_{s_max,n}.
struct OptimalPrimal {
  Vec3 n_prime;
  HermitianOp a_prime_plus;  // 4x4 projection
};

OptimalPrimal optimal_primal(const PauliChannel& ch, const Vec3& n);

/// Dual optimality certificate: lambda >= 0, lambda >= m.Sigma, m.n = 1,
/// tr(lambda) = s_max.
struct DualCertificate {
  HermitianOp lambda;  // 4x4
  Vec3 m;
};

DualCertificate dual_certificate(const PauliChannel& ch, const Vec3& n);

/// Block form of m.Sigma in the eigenbasis (v+,v-,u+,u-) of A'(+):
/// diag(M, -M*), M = (s_max/2)(1 + g.sigma). Verification aid only; the
/// basis is undefined at n'_1 = ±1.
struct BlockDecomposition {
  ComplexMat basis;  // columns v+, v-, u+, u-
  ComplexMat M;      // 2x2 upper block
  Vec3 g;
};

BlockDecomposition block_decompose(const DualCertificate& cert, const OptimalPrimal& prim,
                                   const PauliChannel& ch, const Vec3& n);

enum class RegionGeometry { ellipsoid, segment, point };

struct EllipsoidSamples {
  RegionGeometry geometry;
  std::vector<Vec3> points;  // boundary vectors s_max(n)·n
};

/// Boundary sample of the compatible-observable region. Solid case: `count`
/// deterministic sphere directions scaled to the boundary. Two degenerate
/// axes: `count` points spanning the surviving segment. Unitary channel: the
/// single origin point.
EllipsoidSamples ellipsoid_sample(const PauliChannel& ch, int count);
EllipsoidSamples ellipsoid_sample_serial(const PauliChannel& ch, int count);

struct SimplexNode {
  Vec4 p;
  bool compatible;
};

/// Verdicts on the barycentric grid k/(resolution-1) over the probability
/// simplex, ordered lexicographically in (k0,k1,k2).
std::vector<SimplexNode> simplex_region_sample(const UnbiasedBinaryObservable& obs,
                                               int grid_resolution);
std::vector<SimplexNode> simplex_region_sample_serial(const UnbiasedBinaryObservable& obs,
                                                      int grid_resolution);

}  // namespace pauli_compat
