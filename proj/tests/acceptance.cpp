// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Every tolerance is pinned in the assertions below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pauli_compat/compatibility.hpp"
#include "pauli_compat/dilations.hpp"
#include "pauli_compat/rng.hpp"
#include "pauli_compat/verify.hpp"

using namespace pauli_compat;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

Vec3 sphere_direction(int i, int count) {
  constexpr double golden_angle = 2.399963229728653;
  double z = 1.0 - 2.0 * (i + 0.5) / count;
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(golden_angle * i), r * std::sin(golden_angle * i), z};
}

bool criterion_quantum_not(std::string& detail) {
  PauliChannel qnot({0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  double worst = 0.0;
  for (int i = 0; i < 500; ++i)
    worst = std::max(worst, std::abs(s_max(qnot, sphere_direction(i, 500)) - 2.0 / 3.0));
  for (const Vec3& axis : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}})
    worst = std::max(worst, std::abs(s_max(qnot, axis) - 2.0 / 3.0));
  detail = "max |s_max - 2/3| = " + std::to_string(worst);
  return worst <= 1e-12;
}

bool criterion_depolarizing(std::string& detail) {
  double worst = 0.0;
  bool quarter_exact = true;
  const std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  for (int k = 0; k < 100; ++k) {
    double p = (1.0 / 3.0) * k / 99.0;
    double expected = 2.0 * (p + std::sqrt(p * (1.0 - 3.0 * p)));
    for (const Vec3& axis : axes)
      worst = std::max(worst, std::abs(s_max(depolarizing(p), axis) - expected));
  }
  for (const Vec3& axis : axes)
    if (s_max(depolarizing(0.25), axis) != 1.0) quarter_exact = false;
  detail = "max radius error = " + std::to_string(worst) +
           (quarter_exact ? ", p=1/4 exact" : ", p=1/4 NOT exact");
  return worst <= 1e-12 && quarter_exact;
}

bool criterion_phase_damping(std::string& detail) {
  double worst = 0.0;
  bool transverse_zero = true;
  for (int k = 0; k < 100; ++k) {
    double p = static_cast<double>(k) / 99.0;
    PauliChannel ch = phase_damping(p);
    worst = std::max(worst, std::abs(s_max(ch, {0, 0, 1}) - 2.0 * std::sqrt(p * (1.0 - p))));
    if (s_max(ch, {1, 0, 0}) != 0.0 || s_max(ch, {0, 1, 0}) != 0.0) transverse_zero = false;
  }
  bool half_exact = s_max(phase_damping(0.5), {0, 0, 1}) == 1.0;
  detail = "max z error = " + std::to_string(worst) +
           (transverse_zero ? ", x/y = 0" : ", x/y NONZERO") +
           (half_exact ? ", p=1/2 exact" : ", p=1/2 NOT exact");
  return worst <= 1e-12 && transverse_zero && half_exact;
}

bool criterion_lueders(std::string& detail) {
  int failures = 0;
  for (int i = 1; i <= 50; ++i)
    for (int j = 1; j <= 50; ++j) {
      double s = static_cast<double>(i) / 50.0;
      double t = static_cast<double>(j) / 50.0;
      if (is_compatible(UnbiasedBinaryObservable(s, {1, 0, 0}), luders_z(t)).compatible)
        ++failures;
    }
  detail = std::to_string(failures) + " of 2500 grid points wrongly compatible";
  return failures == 0;
}

bool criterion_measure_and_prepare(std::string& detail) {
  int disagreements = 0, compared = 0;
  for (int a = 0; a < 25; ++a)
    for (int b = 0; b < 25; ++b)
      for (int c = 0; c < 25; ++c) {
        double s = a / 24.0;
        double t = b / 24.0;
        double theta = 3.14159265358979323846 * c / 24.0;
        double expr = s * s + t * t - s * s * t * t * std::cos(theta) * std::cos(theta);
        if (std::abs(expr - 1.0) <= 1e-10) continue;
        ++compared;
        Vec3 n{std::sin(theta), 0.0, std::cos(theta)};
        bool verdict =
            is_compatible(UnbiasedBinaryObservable(s, n), measure_and_prepare(t)).compatible;
        if (verdict != busch_cross_check(s, t, theta)) ++disagreements;
      }

  // theta = pi/2 slice reduces to s^2 + t^2 <= 1
  int slice_bad = 0;
  for (int a = 0; a < 25; ++a)
    for (int b = 0; b < 25; ++b) {
      double s = a / 24.0, t = b / 24.0;
      if (std::abs(s * s + t * t - 1.0) <= 1e-10) continue;
      bool verdict = is_compatible(UnbiasedBinaryObservable(s, {1, 0, 0}), measure_and_prepare(t))
                         .compatible;
      if (verdict != (s * s + t * t <= 1.0)) ++slice_bad;
    }

  detail = std::to_string(disagreements) + " disagreements on " + std::to_string(compared) +
           " grid points, " + std::to_string(slice_bad) + " on the pi/2 slice";
  return disagreements == 0 && slice_bad == 0;
}

bool criterion_duality_gap(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  RngStream rng(2024, 0);
  double worst_primal = 0.0, worst_gap = 0.0;
  int infeasible = 0;
  for (int t = 0; t < 500; ++t) {
    PauliChannel ch(rng.positive_simplex4(1e-3));
    Vec3 n = rng.unit_vec3();
    double smax = s_max(ch, n);

    OptimalPrimal prim = optimal_primal(ch, n);
    HermitianOp induced = induced_effect(prim.a_prime_plus, ch);
    HermitianOp expected = effect_of(UnbiasedBinaryObservable(smax, n), Outcome::plus);
    worst_primal = std::max(worst_primal, (induced.mat() - expected.mat()).max_abs());

    DualCertificate cert = dual_certificate(ch, n);
    if (!certificate_check(cert, ch, n).feasible) ++infeasible;
    worst_gap = std::max(worst_gap, std::abs(cert.lambda.real_trace() - smax));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "max primal error %.2e, max |gap| %.2e, %d infeasible, %.2f s", worst_primal,
                worst_gap, infeasible, secs);
  detail = buf;
  return worst_primal <= 1e-10 && worst_gap <= 1e-10 && infeasible == 0 && secs < 5.0;
}

bool criterion_instrument(std::string& detail) {
  RngStream rng(2024, 0);  // same instances as criterion 6
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    PauliChannel ch(rng.positive_simplex4(1e-3));
    Vec3 n = rng.unit_vec3();
    OptimalPrimal prim = optimal_primal(ch, n);
    HermitianOp minus(ComplexMat::identity(4) - prim.a_prime_plus.mat());
    InstrumentCheck check =
        instrument_consistency(prim.a_prime_plus, minus, ch, 20, 9000 + t);
    worst = std::max({worst, check.max_channel_error, check.max_probability_error});
  }
  detail = "max instrument error = " + std::to_string(worst);
  return worst <= 1e-9;
}

bool criterion_permutation(std::string& detail) {
  RngStream rng(77, 0);
  int broken = 0;
  for (int t = 0; t < 1000; ++t) {
    PauliChannel ch(rng.positive_simplex4(1e-9));
    Vec3 n = rng.unit_vec3();
    PPlusMinus base = p_plus_minus(ch);
    double s0 = s_max(ch, n);
    for (const PauliChannel& perm : permuted_channels(ch))
      if (p_plus_minus(perm).p_plus != base.p_plus || s_max(perm, n) != s0) ++broken;
  }
  detail = std::to_string(broken) + " of 3000 permutations broke exact invariance";
  return broken == 0;
}

bool criterion_search(std::string& detail) {
  RngStream rng(4096, 0);
  double worst_overshoot = 0.0, worst_shortfall = 0.0;
  for (int t = 0; t < 50; ++t) {
    PauliChannel ch(rng.positive_simplex4(1e-3));
    Vec3 n = rng.unit_vec3();
    double smax = s_max(ch, n);
    SearchReport rep = primal_search(ch, n, 10000, 555 + t);
    worst_overshoot = std::max(worst_overshoot, rep.best_s - smax);
    worst_shortfall = std::max(worst_shortfall, smax - rep.best_s);
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "max overshoot %.2e, max shortfall %.3f", worst_overshoot,
                worst_shortfall);
  detail = buf;
  return worst_overshoot <= 1e-9 && worst_shortfall <= 0.05;
}

bool criterion_unital_roundtrip(std::string& detail) {
  RngStream rng(8192, 0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    // random p conjugated by random rotations on both sides
    ComplexMat u = ComplexMat::identity(2);
    {
      double q0 = rng.gaussian(), q1 = rng.gaussian(), q2 = rng.gaussian(), q3 = rng.gaussian();
      double qn = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
      u *= cplx(q0 / qn);
      u += cplx(0, -q1 / qn) * sigma(1) + cplx(0, -q2 / qn) * sigma(2) +
           cplx(0, -q3 / qn) * sigma(3);
    }
    ComplexMat v = ComplexMat::identity(2);
    {
      double q0 = rng.gaussian(), q1 = rng.gaussian(), q2 = rng.gaussian(), q3 = rng.gaussian();
      double qn = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
      v *= cplx(q0 / qn);
      v += cplx(0, -q1 / qn) * sigma(1) + cplx(0, -q2 / qn) * sigma(2) +
           cplx(0, -q3 / qn) * sigma(3);
    }
    Mat3 b = mat3_mul(unitary_to_rotation(u),
                      mat3_mul(bloch_matrix(PauliChannel(rng.positive_simplex4(1e-6))),
                               mat3_transpose(unitary_to_rotation(v))));
    UnitalDecomposition d = unital_decompose(b);
    Mat3 r = bloch_matrix(d);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(r[i][j] - b[i][j]));
  }
  detail = "max Bloch-action reconstruction error = " + std::to_string(worst);
  return worst <= 1e-9;
}

bool criterion_degenerate_geometry(std::string& detail) {
  RngStream rng(321, 0);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    // exactly two zero components at random positions
    int i = static_cast<int>(rng.uniform() * 4) % 4;
    int j = (i + 1 + static_cast<int>(rng.uniform() * 3) % 3) % 4;
    double a = 0.05 + 0.9 * rng.uniform();
    Vec4 p{0, 0, 0, 0};
    p[i] = a;
    p[j] = 1 - a;
    EllipsoidSamples samples = ellipsoid_sample(PauliChannel(p), 21);
    if (samples.geometry != RegionGeometry::segment) {
      ++bad;
      continue;
    }
    // collinearity: every cross product with the first nonzero point vanishes
    Vec3 ref{0, 0, 0};
    for (const Vec3& v : samples.points)
      if (norm(v) > 1e-12) ref = v;
    if (norm(ref) == 0.0) {
      ++bad;
      continue;
    }
    for (const Vec3& v : samples.points)
      if (norm(cross(ref, v)) > 1e-12 * norm(ref)) ++bad;
  }

  int unitary_bad = 0;
  for (int k = 0; k < 4; ++k) {
    Vec4 p{0, 0, 0, 0};
    p[k] = 1.0;
    EllipsoidSamples samples = ellipsoid_sample(PauliChannel(p), 13);
    if (samples.geometry != RegionGeometry::point || samples.points.size() != 1 ||
        samples.points[0] != Vec3{0, 0, 0})
      ++unitary_bad;
  }
  detail = std::to_string(bad) + " segment violations, " + std::to_string(unitary_bad) +
           " unitary-point violations";
  return bad == 0 && unitary_bad == 0;
}

bool criterion_region_residual(std::string& detail) {
  RngStream rng(654, 0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    PauliChannel ch(rng.positive_simplex4(1e-6));
    Vec3 pp = p_plus_minus(ch).p_plus;
    for (const Vec3& v : ellipsoid_sample(ch, 100).points) {
      double lhs = 0.0;
      for (int j = 0; j < 3; ++j) lhs += v[j] * v[j] / (pp[j] * pp[j]);
      worst = std::max(worst, std::abs(lhs - 1.0));
    }
  }

  // simplex verdicts invariant under the probability-vector permutations
  int asym = 0;
  auto nodes = simplex_region_sample(UnbiasedBinaryObservable(0.8, {1, 0, 0}), 11);
  auto find_flag = [&](const Vec4& p) {
    for (const SimplexNode& node : nodes) {
      double d = 0.0;
      for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(node.p[j] - p[j]));
      if (d <= 1e-12) return node.compatible;
    }
    return false;
  };
  for (const SimplexNode& node : nodes) {
    Vec4 p = node.p;
    if (find_flag({p[1], p[0], p[3], p[2]}) != node.compatible) ++asym;
  }

  detail = "max boundary residual = " + std::to_string(worst) + ", " + std::to_string(asym) +
           " symmetry violations";
  return worst <= 1e-9 && asym == 0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"1. quantum NOT: s_max = 2/3 in every direction (1e-12)", criterion_quantum_not},
      {"2. depolarizing radius 2(p+sqrt(p(1-3p))) on [0,1/3] (1e-12)", criterion_depolarizing},
      {"3. phase damping: z radius 2 sqrt(p(1-p)), x/y zero (1e-12)", criterion_phase_damping},
      {"4. Lueders obstruction: X_s incompatible for s > 0 (50x50)", criterion_lueders},
      {"5. measure-and-prepare verdicts match Busch (25^3 grid)", criterion_measure_and_prepare},
      {"6. zero duality gap on 500 random instances (1e-10, < 5 s)", criterion_duality_gap},
      {"7. instrument consistency on the same 500 instances (1e-9)", criterion_instrument},
      {"8. exact permutation symmetry of p_+ and s_max (1000 random)", criterion_permutation},
      {"9. primal search sound (1e-9) and within 0.05 after 1e4 iters", criterion_search},
      {"10. unital decomposition round-trip on 200 channels (1e-9)", criterion_unital_roundtrip},
      {"11. degenerate geometry: segments and the origin point", criterion_degenerate_geometry},
      {"12. region exports: boundary residual 1e-9 and simplex symmetry",
       criterion_region_residual},
  };

  int failures = 0;
  for (Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %s  --  %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), detail.c_str());
  }
  return failures;
}
