#include "pauli_compat/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace pauli_compat {

UnbiasedBinaryObservable::UnbiasedBinaryObservable(double s, const Vec3& n) : s_(s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("sharpness must lie in [0,1]");
  if (s == 0.0) {
    n_ = {0.0, 0.0, 1.0};
    return;
  }
  double len = norm(n);
  if (std::abs(len - 1.0) > 1e-9)
    throw std::invalid_argument("Bloch direction must be a unit vector (norm deviation > 1e-9)");
  n_ = {n[0] / len, n[1] / len, n[2] / len};
}

bool UnbiasedBinaryObservable::operator==(const UnbiasedBinaryObservable& o) const {
  if (s_ != o.s_) return false;
  if (s_ == 0.0) return true;
  return n_ == o.n_;
}

BinaryObservable::BinaryObservable(const HermitianOp& plus_effect, const HermitianOp& minus_effect)
    : plus_(plus_effect), minus_(minus_effect) {
  if (plus_.dim() != minus_.dim()) throw std::invalid_argument("effect dimensions differ");
  if (!is_psd(plus_, 1e-10) || !is_psd(minus_, 1e-10))
    throw std::invalid_argument("effects must be positive semidefinite");
  ComplexMat sum = plus_.mat() + minus_.mat();
  if ((sum - ComplexMat::identity(plus_.dim())).max_abs() > 1e-12)
    throw std::invalid_argument("effects must sum to the identity");
}

BinaryObservable BinaryObservable::from_unbiased(const UnbiasedBinaryObservable& obs) {
  return BinaryObservable(effect_of(obs, Outcome::plus), effect_of(obs, Outcome::minus));
}

PostProcessing::PostProcessing(const std::array<std::array<double, 2>, 2>& mu) : mu_(mu) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (!(mu[x][y] >= -1e-12 && mu[x][y] <= 1.0 + 1e-12))
        throw std::invalid_argument("post-processing entries must lie in [0,1]");
  for (int y = 0; y < 2; ++y)
    if (std::abs(mu[0][y] + mu[1][y] - 1.0) > 1e-12)
      throw std::invalid_argument("post-processing columns must sum to one");
}

PostProcessing PostProcessing::identity() { return PostProcessing({{{1.0, 0.0}, {0.0, 1.0}}}); }

HermitianOp effect_of(const UnbiasedBinaryObservable& obs, Outcome x) {
  double sign = (x == Outcome::plus) ? 1.0 : -1.0;
  double s = sign * obs.sharpness();
  const Vec3& n = obs.direction();
  return pauli_compose({0.5, s * n[0] / 2, s * n[1] / 2, s * n[2] / 2});
}

BinaryObservable post_process(const BinaryObservable& obs, const PostProcessing& mu) {
  ComplexMat plus = cplx(mu(0, 0)) * obs.plus_effect().mat() + cplx(mu(0, 1)) * obs.minus_effect().mat();
  ComplexMat minus = cplx(mu(1, 0)) * obs.plus_effect().mat() + cplx(mu(1, 1)) * obs.minus_effect().mat();
  return BinaryObservable(HermitianOp(plus), HermitianOp(minus));
}

bool noise_order(double t, double s) {
  if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("sharpness parameters must lie in [0,1]");
  return t <= s + 1e-15;
}

PostProcessing noise_post_processing(double t, double s) {
  if (s == 0.0) throw std::invalid_argument("source observable is trivial (s = 0)");
  if (!noise_order(t, s)) throw std::invalid_argument("A_{t,n} is not a post-processing of A_{s,n} for t > s");
  double a = (s + t) / (2 * s), b = (s - t) / (2 * s);
  return PostProcessing({{{a, b}, {b, a}}});
}

}  // namespace pauli_compat
