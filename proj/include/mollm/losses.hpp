// Token-level objective functions: cross-entropy, its bounded unlearning
// variant, KL retention against a frozen reference, dataset aggregates, and
// a finite-difference gradient checker.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "mollm/common.hpp"

namespace mollm {

/// Scalar objective value. `diverged` marks a log(0) sentinel: the value is
/// +/-infinity rather than NaN so callers can keep running and flag the round.
template <class Scalar>
struct LossValue {
  Scalar value = Scalar(0);
  bool diverged = false;
};

/// K prediction positions: a context window per row and one target index
/// each, over a vocabulary of `vocab` classes. `contexts` may have zero rows
/// for logit-level work that never touches the model.
struct TokenBatch {
  Eigen::MatrixXi contexts;  // K x W
  Eigen::VectorXi targets;   // K
  int vocab = 0;
};

inline void validate_batch(const TokenBatch& batch) {
  if (batch.vocab < 1) throw ValidationError("TokenBatch: vocabulary must be positive");
  if (batch.targets.size() < 1) throw ValidationError("TokenBatch: needs at least one token");
  if ((batch.targets.array() < 0).any() || (batch.targets.array() >= batch.vocab).any()) {
    throw ValidationError("TokenBatch: target index out of range");
  }
  if (batch.contexts.rows() != 0 && batch.contexts.rows() != batch.targets.size()) {
    throw ValidationError("TokenBatch: context row count must match targets");
  }
  if (batch.contexts.size() > 0 &&
      ((batch.contexts.array() < 0).any() || (batch.contexts.array() >= batch.vocab).any())) {
    throw ValidationError("TokenBatch: context token out of range");
  }
}

template <class Scalar>
void check_epsilon(Scalar eps) {
  if (!(eps > Scalar(0) && eps < Scalar(1))) {
    throw ValidationError("epsilon must lie strictly inside (0, 1)");
  }
}

/// Each row must be a probability distribution (simplex membership to 1e-9).
template <class Derived>
void validate_probability_rows(const Eigen::MatrixBase<Derived>& probs, Index count, int vocab) {
  using S = typename Derived::Scalar;
  if (probs.rows() != count || probs.cols() != static_cast<Index>(vocab)) {
    throw ValidationError("probability rows: shape mismatch with batch");
  }
  if (!probs.allFinite() || (probs.array() < S(0)).any()) {
    throw ValidationError("probability rows: entries must be finite and non-negative");
  }
  if (((probs.rowwise().sum().array() - S(1)).abs() > S(1e-9)).any()) {
    throw ValidationError("probability rows: each row must sum to 1");
  }
}

/// Shift-by-max softmax of each row.
template <class Derived>
Matrix<typename Derived::Scalar> softmax_rows(const Eigen::MatrixBase<Derived>& logits) {
  using S = typename Derived::Scalar;
  Matrix<S> shifted = logits;
  shifted.colwise() -= logits.rowwise().maxCoeff();
  // Eigen's packet exp clamps its argument rather than underflowing; force
  // IEEE behavior so fully suppressed classes report probability exactly 0.
  Matrix<S> p =
      (shifted.array() < S(-745.2)).select(S(0), shifted.array().exp()).matrix();
  const Vector<S> sums = p.rowwise().sum();
  p.array().colwise() /= sums.array();
  return p;
}

// ---------------------------------------------------------------------------
// Weighted token kernels. `weights` multiplies each token's contribution;
// the public operations below fix the per-sequence 1/K convention.

template <class Scalar>
LossValue<Scalar> weighted_ce(const Matrix<Scalar>& probs, const Eigen::VectorXi& targets,
                              const Vector<Scalar>& weights) {
  LossValue<Scalar> out;
  for (Index i = 0; i < targets.size(); ++i) {
    const Scalar p = probs(i, targets(i));
    if (p <= Scalar(0)) {
      out.value = std::numeric_limits<Scalar>::infinity();
      out.diverged = true;
      return out;
    }
    out.value -= weights(i) * std::log(p);
  }
  return out;
}

template <class Scalar>
LossValue<Scalar> weighted_uce(const Matrix<Scalar>& probs, const Eigen::VectorXi& targets,
                               const Vector<Scalar>& weights, Scalar eps) {
  LossValue<Scalar> out;
  for (Index i = 0; i < targets.size(); ++i) {
    const Scalar p = probs(i, targets(i));
    // 1 - (1-eps) p >= eps > 0, so the log1p form never diverges.
    out.value -= weights(i) * std::log1p(-(Scalar(1) - eps) * p);
  }
  return out;
}

template <class Scalar>
LossValue<Scalar> weighted_kl(const Matrix<Scalar>& ref_probs, const Matrix<Scalar>& cur_probs,
                              const Vector<Scalar>& weights) {
  LossValue<Scalar> out;
  for (Index i = 0; i < ref_probs.rows(); ++i) {
    for (Index c = 0; c < ref_probs.cols(); ++c) {
      const Scalar r = ref_probs(i, c);
      if (r <= Scalar(0)) continue;  // 0 log(0/q) = 0
      const Scalar q = cur_probs(i, c);
      if (q <= Scalar(0)) {
        out.value = std::numeric_limits<Scalar>::infinity();
        out.diverged = true;
        return out;
      }
      out.value += weights(i) * r * (std::log(r) - std::log(q));
    }
  }
  return out;
}

template <class Scalar>
Matrix<Scalar> weighted_ce_logit_gradient(const Matrix<Scalar>& probs,
                                          const Eigen::VectorXi& targets,
                                          const Vector<Scalar>& weights) {
  Matrix<Scalar> grad = probs.array().colwise() * weights.array();
  for (Index i = 0; i < targets.size(); ++i) grad(i, targets(i)) -= weights(i);
  return grad;
}

template <class Scalar>
Matrix<Scalar> weighted_uce_logit_gradient(const Matrix<Scalar>& probs,
                                           const Eigen::VectorXi& targets,
                                           const Vector<Scalar>& weights, Scalar eps) {
  // Row i: w_i * (1-eps)/(1-(1-eps) p_t) * p_t * (onehot(t) - p).
  Matrix<Scalar> grad(probs.rows(), probs.cols());
  for (Index i = 0; i < targets.size(); ++i) {
    const Scalar pt = probs(i, targets(i));
    const Scalar factor =
        weights(i) * (Scalar(1) - eps) / (Scalar(1) - (Scalar(1) - eps) * pt) * pt;
    grad.row(i) = -factor * probs.row(i);
    grad(i, targets(i)) += factor;
  }
  return grad;
}

template <class Scalar>
Matrix<Scalar> weighted_kl_logit_gradient(const Matrix<Scalar>& ref_probs,
                                          const Matrix<Scalar>& cur_probs,
                                          const Vector<Scalar>& weights) {
  return (cur_probs - ref_probs).array().colwise() * weights.array();
}

// ---------------------------------------------------------------------------
// Public operations: per-sequence conventions baked in.

/// -(1/K) sum_i log p_{i,target(i)}. Zero iff every target probability is 1;
/// a zero target probability yields a +inf sentinel.
template <class Scalar>
LossValue<Scalar> ce_loss(const Matrix<Scalar>& probs, const TokenBatch& batch) {
  validate_batch(batch);
  validate_probability_rows(probs, batch.targets.size(), batch.vocab);
  const Index k = batch.targets.size();
  const Vector<Scalar> weights = Vector<Scalar>::Constant(k, Scalar(1) / static_cast<Scalar>(k));
  return weighted_ce(probs, batch.targets, weights);
}

/// Unlearning cross-entropy -(1/K) sum_i log(1 - (1-eps) p_{i,target(i)}).
/// Bounded in [0, -log eps]; zero iff every target probability is 0.
template <class Scalar>
LossValue<Scalar> uce_loss(const Matrix<Scalar>& probs, const TokenBatch& batch, Scalar eps) {
  check_epsilon(eps);
  validate_batch(batch);
  validate_probability_rows(probs, batch.targets.size(), batch.vocab);
  const Index k = batch.targets.size();
  const Vector<Scalar> weights = Vector<Scalar>::Constant(k, Scalar(1) / static_cast<Scalar>(k));
  return weighted_uce(probs, batch.targets, weights, eps);
}

/// sum_i KL(ref_i || cur_i), reference first. Summed over positions, not
/// averaged.
template <class Scalar>
LossValue<Scalar> kl_retention(const Matrix<Scalar>& ref_probs, const Matrix<Scalar>& cur_probs) {
  if (ref_probs.rows() != cur_probs.rows() || ref_probs.cols() != cur_probs.cols()) {
    throw ValidationError("kl_retention: distribution shapes must match");
  }
  if (ref_probs.rows() < 1) throw ValidationError("kl_retention: needs at least one position");
  validate_probability_rows(ref_probs, ref_probs.rows(), static_cast<int>(ref_probs.cols()));
  validate_probability_rows(cur_probs, cur_probs.rows(), static_cast<int>(cur_probs.cols()));
  const Vector<Scalar> weights = Vector<Scalar>::Ones(ref_probs.rows());
  return weighted_kl(ref_probs, cur_probs, weights);
}

/// Gradient of ce_loss with respect to the logits: row i is
/// (1/K)(softmax(z_i) - onehot(target_i)).
template <class Scalar>
Matrix<Scalar> ce_logit_gradient(const Matrix<Scalar>& logits, const TokenBatch& batch) {
  validate_batch(batch);
  if (logits.rows() != batch.targets.size() || logits.cols() != batch.vocab) {
    throw ValidationError("ce_logit_gradient: logits shape mismatch");
  }
  if (!logits.allFinite()) throw ValidationError("ce_logit_gradient: non-finite logits");
  const Index k = batch.targets.size();
  const Vector<Scalar> weights = Vector<Scalar>::Constant(k, Scalar(1) / static_cast<Scalar>(k));
  return weighted_ce_logit_gradient(softmax_rows(logits), batch.targets, weights);
}

/// Gradient of uce_loss with respect to the logits. The per-token derivative
/// magnitude against p_t is bounded by (1-eps)/eps.
template <class Scalar>
Matrix<Scalar> uce_logit_gradient(const Matrix<Scalar>& logits, const TokenBatch& batch,
                                  Scalar eps) {
  check_epsilon(eps);
  validate_batch(batch);
  if (logits.rows() != batch.targets.size() || logits.cols() != batch.vocab) {
    throw ValidationError("uce_logit_gradient: logits shape mismatch");
  }
  if (!logits.allFinite()) throw ValidationError("uce_logit_gradient: non-finite logits");
  const Index k = batch.targets.size();
  const Vector<Scalar> weights = Vector<Scalar>::Constant(k, Scalar(1) / static_cast<Scalar>(k));
  return weighted_uce_logit_gradient(softmax_rows(logits), batch.targets, weights, eps);
}

/// One evaluated sequence: model probabilities aligned with its batch.
template <class Scalar>
struct SequenceEval {
  Matrix<Scalar> probs;
  TokenBatch batch;
};

enum class ForgetMode { Uce, GaCe };

/// Forget objective over a dataset: summed uce_loss in Uce mode, the negated
/// summed ce_loss (unbounded below) in GaCe mode. Empty datasets sum to zero.
template <class Scalar>
LossValue<Scalar> forget_objective(const std::vector<SequenceEval<Scalar>>& sequences,
                                   ForgetMode mode, Scalar eps) {
  if (mode == ForgetMode::Uce) check_epsilon(eps);
  LossValue<Scalar> total;
  for (const auto& seq : sequences) {
    const LossValue<Scalar> one = mode == ForgetMode::Uce
                                      ? uce_loss(seq.probs, seq.batch, eps)
                                      : ce_loss(seq.probs, seq.batch);
    total.diverged |= one.diverged;
    total.value += mode == ForgetMode::Uce ? one.value : -one.value;
  }
  return total;
}

/// Retain objective: summed ce_loss over the dataset.
template <class Scalar>
LossValue<Scalar> retain_objective(const std::vector<SequenceEval<Scalar>>& sequences) {
  LossValue<Scalar> total;
  for (const auto& seq : sequences) {
    const LossValue<Scalar> one = ce_loss(seq.probs, seq.batch);
    total.diverged |= one.diverged;
    total.value += one.value;
  }
  return total;
}

/// Max relative disagreement between `analytic` and the central
/// finite-difference gradient of f at `at`. Per-coordinate denominator is
/// max(|analytic|, |fd|, 1e-12).
template <class F, class Derived, class DerivedG>
typename Derived::Scalar finite_difference_check(F&& f, const Eigen::MatrixBase<Derived>& at,
                                                 const Eigen::MatrixBase<DerivedG>& analytic,
                                                 typename Derived::Scalar h = 1e-5) {
  using S = typename Derived::Scalar;
  typename Derived::PlainObject x = at;
  S worst = S(0);
  for (Index c = 0; c < x.cols(); ++c) {
    for (Index r = 0; r < x.rows(); ++r) {
      const S original = x(r, c);
      x(r, c) = original + h;
      const S up = f(x);
      x(r, c) = original - h;
      const S down = f(x);
      x(r, c) = original;
      const S fd = (up - down) / (S(2) * h);
      const S a = analytic(r, c);
      const S denom = std::max({std::abs(a), std::abs(fd), S(1e-12)});
      worst = std::max(worst, std::abs(a - fd) / denom);
    }
  }
  return worst;
}

}  // namespace mollm
