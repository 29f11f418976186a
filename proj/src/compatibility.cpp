#include "pauli_compat/compatibility.hpp"

#include <cmath>
#include <stdexcept>

#include "pauli_compat/dilations.hpp"

namespace pauli_compat {

namespace {

constexpr double kDegenerateWeightTol = 1e-12;

Vec3 require_unit(const Vec3& n) {
  double len = norm(n);
  if (std::abs(len - 1.0) > 1e-9) throw std::invalid_argument("direction must be a unit vector");
  return {n[0] / len, n[1] / len, n[2] / len};
}

}  // namespace

PPlusMinus p_plus_minus(const PauliChannel& ch) {
  const Vec4& p = ch.probabilities();
  double a1 = std::sqrt(p[0] * p[1]), b1 = std::sqrt(p[2] * p[3]);
  double a2 = std::sqrt(p[0] * p[2]), b2 = std::sqrt(p[1] * p[3]);
  double a3 = std::sqrt(p[0] * p[3]), b3 = std::sqrt(p[1] * p[2]);
  return {{2 * (a1 + b1), 2 * (a2 + b2), 2 * (a3 + b3)},
          {2 * (a1 - b1), 2 * (a2 - b2), 2 * (a3 - b3)}};
}

double s_max(const PauliChannel& ch, const Vec3& n_in) {
  Vec3 n = require_unit(n_in);
  Vec3 pp = p_plus_minus(ch).p_plus;
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (pp[j] == 0.0) {
      if (std::abs(n[j]) > kDegenerateWeightTol) return 0.0;
    } else {
      sum += n[j] * n[j] / (pp[j] * pp[j]);
    }
  }
  if (sum == 0.0) return 0.0;
  return 1.0 / std::sqrt(sum);
}

CompatibilityVerdict is_compatible(const UnbiasedBinaryObservable& obs, const PauliChannel& ch,
                                   double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  const Vec3& n = obs.direction();
  double s = obs.sharpness();
  Vec3 pp = p_plus_minus(ch).p_plus;

  CompatibilityVerdict v{};
  v.s_max = s_max(ch, n);
  bool degenerate_violation = false;
  double lhs = 0.0;
  for (int j = 0; j < 3; ++j) {
    v.degenerate_axes[j] = (pp[j] == 0.0);
    if (v.degenerate_axes[j]) {
      if (s * std::abs(n[j]) > kDegenerateWeightTol) degenerate_violation = true;
    } else {
      lhs += s * s * n[j] * n[j] / (pp[j] * pp[j]);
    }
  }
  v.ellipsoid_lhs = lhs;
  v.compatible = !degenerate_violation && lhs <= 1.0 + tol;
  return v;
}

namespace {

// A'(+) = (1/2) [[1, n1, n2, n3], [n1, 1, -i n3, i n2], [n2, i n3, 1, -i n1],
// [n3, -i n2, i n1, 1]] for a unit n'.
HermitianOp suff_a_projection(const Vec3& np) {
  const cplx i(0, 1);
  ComplexMat a(4, 4);
  a(0, 0) = 1;        a(0, 1) = np[0];     a(0, 2) = np[1];     a(0, 3) = np[2];
  a(1, 0) = np[0];    a(1, 1) = 1;         a(1, 2) = -i * np[2]; a(1, 3) = i * np[1];
  a(2, 0) = np[1];    a(2, 1) = i * np[2]; a(2, 2) = 1;         a(2, 3) = -i * np[0];
  a(3, 0) = np[2];    a(3, 1) = -i * np[1]; a(3, 2) = i * np[0]; a(3, 3) = 1;
  a *= cplx(0.5);
  return HermitianOp(a);
}

struct DirectionSplit {
  Vec3 n;               // unit input
  std::array<bool, 3> degenerate;
  bool weight_on_degenerate;
  Vec3 n_prime;         // defined when !weight_on_degenerate
  double inv_norm;      // s_max value (0 if degenerate weight)
};

DirectionSplit split_direction(const PauliChannel& ch, const Vec3& n_in) {
  DirectionSplit d{};
  d.n = require_unit(n_in);
  Vec3 pp = p_plus_minus(ch).p_plus;
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    d.degenerate[j] = (pp[j] == 0.0);
    if (d.degenerate[j]) {
      if (std::abs(d.n[j]) > kDegenerateWeightTol) d.weight_on_degenerate = true;
    } else {
      sum += d.n[j] * d.n[j] / (pp[j] * pp[j]);
    }
  }
  if (d.weight_on_degenerate || sum == 0.0) {
    d.inv_norm = 0.0;
    return d;
  }
  d.inv_norm = 1.0 / std::sqrt(sum);
  for (int j = 0; j < 3; ++j)
    d.n_prime[j] = d.degenerate[j] ? 0.0 : d.n[j] / pp[j] * d.inv_norm;
  return d;
}

}  // namespace

OptimalPrimal optimal_primal(const PauliChannel& ch, const Vec3& n) {
  DirectionSplit d = split_direction(ch, n);
  if (d.weight_on_degenerate || d.inv_norm == 0.0)
    throw std::invalid_argument(
        "no nonzero primal: direction has weight on a degenerate axis (s_max = 0, "
        "use the trivial observable)");
  return {d.n_prime, suff_a_projection(d.n_prime)};
}

DualCertificate dual_certificate(const PauliChannel& ch, const Vec3& n) {
  DirectionSplit d = split_direction(ch, n);

  if (d.weight_on_degenerate || d.inv_norm == 0.0) {
    // Sigma_j vanishes identically on degenerate axes, so lambda = 0 with m
    // supported there certifies s_max = 0.
    double w = 0.0;
    for (int j = 0; j < 3; ++j)
      if (d.degenerate[j]) w += d.n[j] * d.n[j];
    Vec3 m{};
    for (int j = 0; j < 3; ++j) m[j] = d.degenerate[j] ? d.n[j] / w : 0.0;
    return {HermitianOp::zero(4), m};
  }

  Vec3 pp = p_plus_minus(ch).p_plus;
  double qn2 = 0.0;  // ||Q^{-1} n||^2 over non-degenerate axes
  for (int j = 0; j < 3; ++j)
    if (!d.degenerate[j]) qn2 += d.n[j] * d.n[j] / (pp[j] * pp[j]);
  Vec3 m{};
  for (int j = 0; j < 3; ++j)
    m[j] = d.degenerate[j] ? 0.0 : d.n[j] / (pp[j] * pp[j]) / qn2;

  HermitianOp aprime = suff_a_projection(d.n_prime);
  std::array<HermitianOp, 3> sig = sigma_operators_full(ch);
  ComplexMat ms(4, 4);
  for (int j = 0; j < 3; ++j) ms += cplx(m[j]) * sig[j].mat();
  ComplexMat lambda = aprime.mat() * ms * aprime.mat();
  return {HermitianOp(lambda), m};
}

BlockDecomposition block_decompose(const DualCertificate& cert, const OptimalPrimal& prim,
                                   const PauliChannel& ch, const Vec3& n) {
  (void)n;
  const Vec3& np = prim.n_prime;
  if (1.0 - np[0] * np[0] < 1e-12)
    throw std::invalid_argument("unsupported basis point (n'_1 = ±1)");

  const cplx i(0, 1);
  ComplexMat basis(4, 4);
  for (int col = 0; col < 4; ++col) {
    double sign = (col % 2 == 0) ? 1.0 : -1.0;  // v+, v-, u+, u-
    bool v = col < 2;
    double f = 1.0 / (2.0 * std::sqrt(1.0 + sign * np[0]));
    cplx c0 = (v ? cplx(np[1]) : cplx(-np[1])) + sign * i * np[2];
    cplx c1 = -sign * np[1] + (v ? -i * np[2] : i * np[2]);
    cplx c2 = 1.0 + sign * np[0];
    cplx c3 = (v ? sign * i : -sign * i) * (1.0 + sign * np[0]);
    basis(0, col) = f * c0;
    basis(1, col) = f * c1;
    basis(2, col) = f * c2;
    basis(3, col) = f * c3;
  }

  std::array<HermitianOp, 3> sig = sigma_operators_full(ch);
  ComplexMat ms(4, 4);
  for (int j = 0; j < 3; ++j) ms += cplx(cert.m[j]) * sig[j].mat();
  ComplexMat in_basis = basis.adjoint() * ms * basis;

  double off = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 2; c < 4; ++c)
      off = std::max({off, std::abs(in_basis(r, c)), std::abs(in_basis(c, r))});
  if (off > 1e-8)
    throw std::runtime_error("m.Sigma is not block-diagonal in the primal eigenbasis");

  ComplexMat block(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) block(r, c) = in_basis(r, c);

  PPlusMinus pm = p_plus_minus(ch);
  Vec3 ratio{};
  for (int j = 0; j < 3; ++j) ratio[j] = pm.p_plus[j] == 0.0 ? 0.0 : pm.p_minus[j] / pm.p_plus[j];
  double denom = std::sqrt(1.0 - np[0] * np[0]);
  Vec3 g{(ratio[1] * np[1] * np[1] - ratio[2] * np[2] * np[2]) / denom,
         (ratio[1] + ratio[2]) * np[1] * np[2] / denom,
         -np[0] * ratio[0]};
  return {basis, block, g};
}

namespace {

int degenerate_count(const Vec3& pp) {
  int d = 0;
  for (int j = 0; j < 3; ++j)
    if (pp[j] == 0.0) ++d;
  return d;
}

Vec3 fibonacci_direction(int i, int count) {
  constexpr double golden_angle = 2.399963229728653;  // pi * (3 - sqrt(5))
  double z = 1.0 - 2.0 * (i + 0.5) / count;
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  double a = golden_angle * i;
  return {r * std::cos(a), r * std::sin(a), z};
}

template <bool Parallel>
EllipsoidSamples ellipsoid_sample_impl(const PauliChannel& ch, int count) {
  if (count < 1) throw std::invalid_argument("sample count must be at least 1");
  Vec3 pp = p_plus_minus(ch).p_plus;
  int deg = degenerate_count(pp);

  EllipsoidSamples out;
  if (deg == 3) {
    out.geometry = RegionGeometry::point;
    out.points.push_back({0.0, 0.0, 0.0});
    return out;
  }
  if (deg == 2) {
    out.geometry = RegionGeometry::segment;
    int axis = 0;
    for (int j = 0; j < 3; ++j)
      if (pp[j] != 0.0) axis = j;
    double s = pp[axis];
    out.points.resize(count);
    for (int i = 0; i < count; ++i) {
      double t = count == 1 ? 1.0 : -1.0 + 2.0 * i / (count - 1.0);
      Vec3 v{};
      v[axis] = t * s;
      out.points[i] = v;
    }
    return out;
  }

  out.geometry = RegionGeometry::ellipsoid;
  out.points.resize(count);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int i = 0; i < count; ++i) {
    Vec3 n = fibonacci_direction(i, count);
    double s = s_max(ch, n);
    out.points[i] = {s * n[0], s * n[1], s * n[2]};
  }
  return out;
}

template <bool Parallel>
std::vector<SimplexNode> simplex_region_sample_impl(const UnbiasedBinaryObservable& obs,
                                                    int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  int m = resolution - 1;
  std::vector<std::array<int, 3>> grid;
  for (int k0 = 0; k0 <= m; ++k0)
    for (int k1 = 0; k1 + k0 <= m; ++k1)
      for (int k2 = 0; k2 + k1 + k0 <= m; ++k2) grid.push_back({k0, k1, k2});

  std::vector<SimplexNode> nodes(grid.size());
  long total = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static) if (Parallel)
  for (long idx = 0; idx < total; ++idx) {
    const auto& k = grid[idx];
    Vec4 p{static_cast<double>(k[0]) / m, static_cast<double>(k[1]) / m,
           static_cast<double>(k[2]) / m, static_cast<double>(m - k[0] - k[1] - k[2]) / m};
    PauliChannel ch(p);
    nodes[idx] = SimplexNode{p, is_compatible(obs, ch).compatible};
  }
  return nodes;
}

}  // namespace

EllipsoidSamples ellipsoid_sample(const PauliChannel& ch, int count) {
  return ellipsoid_sample_impl<true>(ch, count);
}

EllipsoidSamples ellipsoid_sample_serial(const PauliChannel& ch, int count) {
  return ellipsoid_sample_impl<false>(ch, count);
}

std::vector<SimplexNode> simplex_region_sample(const UnbiasedBinaryObservable& obs,
                                               int grid_resolution) {
  return simplex_region_sample_impl<true>(obs, grid_resolution);
}

std::vector<SimplexNode> simplex_region_sample_serial(const UnbiasedBinaryObservable& obs,
                                                      int grid_resolution) {
  return simplex_region_sample_impl<false>(obs, grid_resolution);
}

}  // namespace pauli_compat
