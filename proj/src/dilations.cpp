#include "pauli_compat/dilations.hpp"

#include <cmath>
#include <stdexcept>

namespace pauli_compat {

NaimarkDilation naimark_dilate(const BinaryObservable& obs) {
  int d = obs.dim();
  std::vector<std::vector<ComplexMat>> vectors(2);

  for (int x = 0; x < 2; ++x) {
    const HermitianOp& effect = x == 0 ? obs.plus_effect() : obs.minus_effect();
    EigenSystem es = hermitian_eig(effect);
    double largest = std::max(es.eigenvalues.front(), 0.0);
    for (int k = 0; k < d; ++k) {
      if (es.eigenvalues[k] <= 1e-10 * largest || es.eigenvalues[k] <= 0.0) continue;
      ComplexMat phi(d, 1);
      double w = std::sqrt(es.eigenvalues[k]);
      for (int r = 0; r < d; ++r) phi(r, 0) = w * es.eigenvectors(r, k);
      vectors[x].push_back(phi);
    }
  }

  int dimK = static_cast<int>(vectors[0].size() + vectors[1].size());
  NaimarkDilation dil;
  dil.dimK = dimK;
  dil.spectral_vectors = vectors;
  dil.T = ComplexMat(dimK, d);

  int row = 0;
  std::array<int, 2> block_start{};
  for (int x = 0; x < 2; ++x) {
    block_start[x] = row;
    for (const ComplexMat& phi : vectors[x]) {
      for (int c = 0; c < d; ++c) dil.T(row, c) = std::conj(phi(c, 0));
      ++row;
    }
  }

  for (int x = 0; x < 2; ++x) {
    ComplexMat proj(dimK, dimK);
    int r0 = block_start[x];
    int rx = static_cast<int>(vectors[x].size());
    for (int k = 0; k < rx; ++k) proj(r0 + k, r0 + k) = 1.0;
    dil.pvm.push_back(HermitianOp(proj));
  }
  return dil;
}

KrausChannel mother_channel(const BinaryObservable& obs) {
  NaimarkDilation dil = naimark_dilate(obs);
  std::vector<ComplexMat> kraus;
  for (const HermitianOp& proj : dil.pvm) {
    ComplexMat k = proj.mat() * dil.T;
    if (k.max_abs() > 0.0) kraus.push_back(k);
  }
  return KrausChannel(std::move(kraus));
}

StinespringDilation stinespring_dilate(const PauliChannel& ch) {
  StinespringDilation dil;
  dil.kraus_basis_labels = kraus_min_labels(ch);
  dil.dimK = static_cast<int>(dil.kraus_basis_labels.size());
  std::vector<ComplexMat> ops = kraus_min(ch);
  dil.V = ComplexMat(2 * dil.dimK, 2);
  for (int k = 0; k < dil.dimK; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dil.V(i * dil.dimK + k, j) = ops[k](i, j);
  return dil;
}

HermitianOp conjugate_apply(const StinespringDilation& dil, const HermitianOp& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("conjugate channel acts on qubit states");
  ComplexMat big = dil.V * rho.mat() * dil.V.adjoint();
  return partial_trace_first(HermitianOp(big), dil.dimK);
}

namespace {

std::array<HermitianOp, 3> sigma_operators_on(const PauliChannel& ch, const std::vector<int>& labels) {
  int d = static_cast<int>(labels.size());
  std::array<ComplexMat, 3> mats{ComplexMat(d, d), ComplexMat(d, d), ComplexMat(d, d)};
  for (int i = 1; i <= 3; ++i) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        int k = labels[a], n = labels[b];
        cplx t = (sigma(k) * sigma(i) * sigma(n)).trace();
        mats[i - 1](a, b) = std::sqrt(ch[k] * ch[n]) * t;
      }
  }
  return {HermitianOp(mats[0]), HermitianOp(mats[1]), HermitianOp(mats[2])};
}

}  // namespace

std::array<HermitianOp, 3> sigma_operators(const PauliChannel& ch) {
  return sigma_operators_on(ch, kraus_min_labels(ch));
}

std::array<HermitianOp, 3> sigma_operators_full(const PauliChannel& ch) {
  return sigma_operators_on(ch, {0, 1, 2, 3});
}

HermitianOp sigma_zero_full(const PauliChannel& ch) {
  ComplexMat m(4, 4);
  for (int k = 0; k < 4; ++k) m(k, k) = 2.0 * ch[k];
  return HermitianOp(m);
}

HermitianOp induced_effect(const HermitianOp& aprime_effect, const PauliChannel& ch) {
  std::vector<int> labels;
  if (aprime_effect.dim() == 4) {
    labels = {0, 1, 2, 3};
  } else {
    labels = kraus_min_labels(ch);
    if (aprime_effect.dim() != static_cast<int>(labels.size()))
      throw std::invalid_argument(
          "effect dimension matches neither the minimal ancilla nor the full 4-dim space");
  }
  ComplexMat out(2, 2);
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = 0; b < labels.size(); ++b) {
      cplx w = aprime_effect(static_cast<int>(a), static_cast<int>(b)) *
               std::sqrt(ch[labels[a]] * ch[labels[b]]);
      if (w == 0.0) continue;
      out += w * (sigma(labels[a]) * sigma(labels[b]));
    }
  return HermitianOp(out);
}

BinaryObservable induced_observable(const BinaryObservable& aprime, const PauliChannel& ch) {
  return BinaryObservable(induced_effect(aprime.plus_effect(), ch),
                          induced_effect(aprime.minus_effect(), ch));
}

}  // namespace pauli_compat
