#include "pauli_compat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pauli_compat/dilations.hpp"
#include "pauli_compat/rng.hpp"

namespace pauli_compat {

namespace {

ComplexMat dot_sigma_full(const PauliChannel& ch, const Vec3& coeff) {
  std::array<HermitianOp, 3> sig = sigma_operators_full(ch);
  ComplexMat out(4, 4);
  for (int j = 0; j < 3; ++j) out += cplx(coeff[j]) * sig[j].mat();
  return out;
}

double tr_prod_real(const ComplexMat& a, const ComplexMat& b) {
  cplx t = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

}  // namespace

CertificateCheckResult certificate_check(const DualCertificate& cert, const PauliChannel& ch,
                                         const Vec3& n, double tol) {
  if (cert.lambda.dim() != 4)
    throw std::invalid_argument("certificate lambda must act on the 4-dim conjugate space");
  double upper = cert.lambda.real_trace();
  double mn = dot(cert.m, n);
  bool feasible = std::abs(mn - 1.0) <= 1e-10;
  if (feasible) feasible = is_psd(cert.lambda, tol);
  if (feasible) {
    ComplexMat slack = cert.lambda.mat() - dot_sigma_full(ch, cert.m);
    feasible = is_psd(HermitianOp(slack), tol);
  }
  return {feasible, upper};
}

std::pair<Vec3, Vec3> orthonormal_completion(const Vec3& n) {
  int least = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(n[k]) < std::abs(n[least])) least = k;
  Vec3 e{};
  e[least] = 1.0;
  double proj = dot(e, n);
  Vec3 n1 = normalized({e[0] - proj * n[0], e[1] - proj * n[1], e[2] - proj * n[2]});
  return {n1, cross(n, n1)};
}

namespace {

struct PrimalInstance {
  ComplexMat objective;                 // n.Sigma
  std::vector<ComplexMat> constraints;  // nontrivial n_i.Sigma
  std::array<std::array<double, 2>, 2> gram_inv{};
  int n_constraints = 0;
};

PrimalInstance make_instance(const PauliChannel& ch, const Vec3& n) {
  PrimalInstance inst{dot_sigma_full(ch, n), {}, {}, 0};
  auto [n1, n2] = orthonormal_completion(n);
  for (const Vec3& v : {n1, n2}) {
    ComplexMat s = dot_sigma_full(ch, v);
    if (s.max_abs() > 1e-14) inst.constraints.push_back(s);
  }
  inst.n_constraints = static_cast<int>(inst.constraints.size());
  if (inst.n_constraints == 1) {
    inst.gram_inv[0][0] = 1.0 / tr_prod_real(inst.constraints[0], inst.constraints[0]);
  } else if (inst.n_constraints == 2) {
    double g00 = tr_prod_real(inst.constraints[0], inst.constraints[0]);
    double g11 = tr_prod_real(inst.constraints[1], inst.constraints[1]);
    double g01 = tr_prod_real(inst.constraints[0], inst.constraints[1]);
    double det = g00 * g11 - g01 * g01;
    if (std::abs(det) < 1e-24 * std::max(1.0, g00 * g11)) {
      // collinear constraint operators: keep only the first
      inst.constraints.pop_back();
      inst.n_constraints = 1;
      inst.gram_inv[0][0] = 1.0 / g00;
    } else {
      inst.gram_inv = {{{g11 / det, -g01 / det}, {-g01 / det, g00 / det}}};
    }
  }
  return inst;
}

// Project onto the constraint subspace, then line-search toward id/2 until the
// spectrum fits [0,1]. Mixing with id/2 leaves the (traceless) constraints
// intact. Returns the feasible effect and its objective value.
std::pair<HermitianOp, double> feasibilize(const PrimalInstance& inst, const ComplexMat& cand) {
  ComplexMat c = cand;
  if (inst.n_constraints > 0) {
    std::array<double, 2> viol{};
    for (int i = 0; i < inst.n_constraints; ++i) viol[i] = tr_prod_real(c, inst.constraints[i]);
    for (int i = 0; i < inst.n_constraints; ++i) {
      double alpha = 0.0;
      for (int j = 0; j < inst.n_constraints; ++j) alpha += inst.gram_inv[i][j] * viol[j];
      c -= cplx(alpha) * inst.constraints[i];
    }
  }
  EigenSystem es = hermitian_eig(HermitianOp(c));
  double lmax = es.eigenvalues.front(), lmin = es.eigenvalues.back();
  double gamma = 1.0;
  if (lmin < 0.0) gamma = std::min(gamma, 1.0 / (1.0 - 2.0 * lmin));
  if (lmax > 1.0) gamma = std::min(gamma, 1.0 / (2.0 * lmax - 1.0));
  ComplexMat a = cplx(gamma) * c;
  ComplexMat half = ComplexMat::identity(4);
  half *= cplx((1.0 - gamma) / 2.0);
  a += half;
  HermitianOp eff(a);
  return {eff, tr_prod_real(eff.mat(), inst.objective)};
}

ComplexMat projection_from_frame(const std::array<cplx, 8>& frame) {
  // two columns, Gram-Schmidt, then v1 v1^dag + v2 v2^dag
  std::array<cplx, 4> v1{frame[0], frame[1], frame[2], frame[3]};
  std::array<cplx, 4> v2{frame[4], frame[5], frame[6], frame[7]};
  double n1 = 0.0;
  for (const cplx& z : v1) n1 += std::norm(z);
  n1 = std::sqrt(std::max(n1, 1e-300));
  for (cplx& z : v1) z /= n1;
  cplx ip = 0.0;
  for (int k = 0; k < 4; ++k) ip += std::conj(v1[k]) * v2[k];
  for (int k = 0; k < 4; ++k) v2[k] -= ip * v1[k];
  double n2 = 0.0;
  for (const cplx& z : v2) n2 += std::norm(z);
  n2 = std::sqrt(std::max(n2, 1e-300));
  for (cplx& z : v2) z /= n2;
  ComplexMat p(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) p(r, c) = v1[r] * std::conj(v1[c]) + v2[r] * std::conj(v2[c]);
  return p;
}

struct RestartResult {
  double best_s = -1.0;
  ComplexMat best_effect;
  long evals = 0;
};

RestartResult run_restart(const PrimalInstance& inst, std::uint64_t seed, std::uint64_t restart,
                          long budget) {
  RngStream rng(seed, restart);
  std::array<cplx, 8> frame{};
  for (cplx& z : frame) z = rng.complex_gaussian();

  RestartResult res;
  auto [eff, obj] = feasibilize(inst, projection_from_frame(frame));
  res.best_s = obj;
  res.best_effect = eff.mat();
  res.evals = 1;

  for (long it = 1; it < budget; ++it) {
    double f = budget > 1 ? static_cast<double>(it) / (budget - 1) : 1.0;
    double sigma = 0.7 * std::pow(0.004 / 0.7, f);
    std::array<cplx, 8> trial = frame;
    for (cplx& z : trial) z += sigma * rng.complex_gaussian();
    auto [teff, tobj] = feasibilize(inst, projection_from_frame(trial));
    ++res.evals;
    if (tobj > res.best_s) {
      res.best_s = tobj;
      res.best_effect = teff.mat();
      frame = trial;
    }
  }
  return res;
}

template <bool Parallel>
SearchReport primal_search_impl(const PauliChannel& ch, const Vec3& n, long iterations,
                                std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (std::abs(norm(n) - 1.0) > 1e-9) throw std::invalid_argument("direction must be a unit vector");
  PrimalInstance inst = make_instance(ch, normalized(n));

  int restarts = static_cast<int>(std::clamp<long>(iterations / 1000, 1, 8));
  long budget = iterations / restarts;
  long remainder = iterations - budget * restarts;

  std::vector<RestartResult> results(restarts);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (int r = 0; r < restarts; ++r)
    results[r] = run_restart(inst, seed, r, budget + (r == 0 ? remainder : 0));

  int best = 0;
  long evals = 0;
  for (int r = 0; r < restarts; ++r) {
    evals += results[r].evals;
    if (results[r].best_s > results[best].best_s) best = r;
  }
  return {results[best].best_s, HermitianOp(results[best].best_effect), evals, seed};
}

}  // namespace

SearchReport primal_search(const PauliChannel& ch, const Vec3& n, long iterations,
                           std::uint64_t seed) {
  return primal_search_impl<true>(ch, n, iterations, seed);
}

SearchReport primal_search_serial(const PauliChannel& ch, const Vec3& n, long iterations,
                                  std::uint64_t seed) {
  return primal_search_impl<false>(ch, n, iterations, seed);
}

namespace {

template <bool Parallel>
InstrumentCheck instrument_consistency_impl(const HermitianOp& aprime_plus,
                                            const HermitianOp& aprime_minus,
                                            const PauliChannel& ch, long trials,
                                            std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (aprime_plus.dim() != aprime_minus.dim())
    throw std::invalid_argument("effect dimensions differ");

  std::vector<int> labels;
  if (aprime_plus.dim() == 4) {
    labels = {0, 1, 2, 3};
  } else {
    labels = kraus_min_labels(ch);
    if (aprime_plus.dim() != static_cast<int>(labels.size()))
      throw std::invalid_argument(
          "effect dimension matches neither the minimal ancilla nor the full 4-dim space");
  }
  int d = static_cast<int>(labels.size());

  ComplexMat v(2 * d, 2);
  for (int k = 0; k < d; ++k) {
    ComplexMat mk = cplx(std::sqrt(ch[labels[k]])) * sigma(labels[k]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) v(i * d + k, j) = mk(i, j);
  }

  std::array<ComplexMat, 2> lifted{tensor(ComplexMat::identity(2), aprime_plus.mat()),
                                   tensor(ComplexMat::identity(2), aprime_minus.mat())};
  std::array<ComplexMat, 2> induced{induced_effect(aprime_plus, ch).mat(),
                                    induced_effect(aprime_minus, ch).mat()};

  InstrumentCheck check{0.0, 0.0, trials};
  double chan_err = 0.0, prob_err = 0.0;
#pragma omp parallel for schedule(static) reduction(max : chan_err, prob_err) if (Parallel)
  for (long t = 0; t < trials; ++t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    HermitianOp rho = rng.density_matrix(2);
    ComplexMat big = v * rho.mat() * v.adjoint();
    ComplexMat sum_phi(2, 2);
    for (int x = 0; x < 2; ++x) {
      ComplexMat phi = partial_trace_second(big * lifted[x], d);
      sum_phi += phi;
      cplx expected = (rho.mat() * induced[x]).trace();
      prob_err = std::max(prob_err, std::abs(phi.trace() - expected));
    }
    chan_err = std::max(chan_err, (sum_phi - apply(ch, rho).mat()).max_abs());
  }
  check.max_channel_error = chan_err;
  check.max_probability_error = prob_err;
  return check;
}

}  // namespace

InstrumentCheck instrument_consistency(const HermitianOp& aprime_plus,
                                       const HermitianOp& aprime_minus, const PauliChannel& ch,
                                       long trials, std::uint64_t seed) {
  return instrument_consistency_impl<true>(aprime_plus, aprime_minus, ch, trials, seed);
}

InstrumentCheck instrument_consistency_serial(const HermitianOp& aprime_plus,
                                              const HermitianOp& aprime_minus,
                                              const PauliChannel& ch, long trials,
                                              std::uint64_t seed) {
  return instrument_consistency_impl<false>(aprime_plus, aprime_minus, ch, trials, seed);
}

bool busch_cross_check(double s, double t, double theta) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("sharpness parameters must lie in [0,1]");
  if (!(theta >= 0.0 && theta <= 3.14159265358979323846 + 1e-12))
    throw std::invalid_argument("angle must lie in [0, pi]");
  double c = std::cos(theta);
  return s * s + t * t - s * s * t * t * c * c <= 1.0;
}

}  // namespace pauli_compat
