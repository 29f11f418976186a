#pragma once

#include <cmath>
#include <cstdint>

#include "pauli_compat/linalg.hpp"

namespace pauli_compat {

/// Counter-based deterministic RNG. A stream is keyed by (seed, stream id);
/// values depend only on the key and the call index, never on scheduling, so
/// parallel loops can hand each trial its own stream and stay reproducible.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ stream)) {}

  double uniform() { return (mix(key_ ^ (0x9E3779B97F4A7C15ULL * ++ctr_)) >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (two uniforms per pair, cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx complex_gaussian() {
    double re = gaussian(), im = gaussian();
    return cplx(re, im);
  }

  Vec3 unit_vec3() {
    for (;;) {
      Vec3 v{gaussian(), gaussian(), gaussian()};
      double n = norm(v);
      if (n > 1e-9) return {v[0] / n, v[1] / n, v[2] / n};
    }
  }

  /// Strictly positive probability 4-vector (Dirichlet(1,1,1,1), rejecting
  /// components below min_component).
  Vec4 positive_simplex4(double min_component = 1e-3) {
    for (;;) {
      Vec4 e;
      double s = 0.0;
      for (double& x : e) {
        x = -std::log(1.0 - uniform());
        s += x;
      }
      Vec4 p{e[0] / s, e[1] / s, e[2] / s, e[3] / s};
      if (p[0] >= min_component && p[1] >= min_component && p[2] >= min_component &&
          p[3] >= min_component)
        return p;
    }
  }

  /// Full-rank random density matrix: normalized G G^dag with i.i.d. standard
  /// complex Gaussian entries.
  HermitianOp density_matrix(int dim = 2) {
    ComplexMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = complex_gaussian();
    ComplexMat r = g * g.adjoint();
    r *= cplx(1.0 / r.trace().real());
    return HermitianOp(r);
  }

  HermitianOp hermitian(int dim) {
    ComplexMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = complex_gaussian();
    ComplexMat h = g + g.adjoint();
    h *= cplx(0.5);
    return HermitianOp(h);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pauli_compat
