#pragma once

#include <array>

#include "pauli_compat/linalg.hpp"

namespace pauli_compat {

enum class Outcome { plus, minus };

/// Unbiased binary qubit observable A_{s,n} with effects (1 ± s n.sigma)/2.
/// s = 0 is the trivial coin toss; its direction is immaterial and stored as
/// (0,0,1), and such observables compare equal regardless of direction.
class UnbiasedBinaryObservable {
public:
  UnbiasedBinaryObservable(double s, const Vec3& n);

  double sharpness() const { return s_; }
  const Vec3& direction() const { return n_; }

  bool operator==(const UnbiasedBinaryObservable& o) const;

private:
  double s_;
  Vec3 n_;
};

/// Binary observable as an explicit effect pair. Effects must be PSD
/// (tol 1e-10) and sum to the identity (tol 1e-12); any square dimension is
/// accepted so the same container serves qubit observables and observables on
/// a dilation space.
class BinaryObservable {
public:
  BinaryObservable(const HermitianOp& plus_effect, const HermitianOp& minus_effect);

  const HermitianOp& effect(Outcome x) const { return x == Outcome::plus ? plus_ : minus_; }
  const HermitianOp& plus_effect() const { return plus_; }
  const HermitianOp& minus_effect() const { return minus_; }
  int dim() const { return plus_.dim(); }

  static BinaryObservable from_unbiased(const UnbiasedBinaryObservable& obs);

private:
  HermitianOp plus_;
  HermitianOp minus_;
};

/// Binary post-processing matrix mu[x][y]: probability of reporting x given
/// outcome y, so each column sums to one.
class PostProcessing {
public:
  explicit PostProcessing(const std::array<std::array<double, 2>, 2>& mu);

  static PostProcessing identity();
  double operator()(int x, int y) const { return mu_[x][y]; }

private:
  std::array<std::array<double, 2>, 2> mu_;
};

HermitianOp effect_of(const UnbiasedBinaryObservable& obs, Outcome x);

/// (mu ∘ A)(x) = sum_y mu[x][y] A(y).
BinaryObservable post_process(const BinaryObservable& obs, const PostProcessing& mu);

/// Whether A_{t,n} is a post-processing of A_{s,n}: exactly t <= s.
bool noise_order(double t, double s);

/// The unique stochastic matrix carrying A_{s,n} to A_{t,n} for t <= s, s > 0.
PostProcessing noise_post_processing(double t, double s);

}  // namespace pauli_compat
