// Minimal next-token softmax model: per-token embeddings concatenated over a
// fixed context window, one linear decoder, analytic forward/backward, and a
// flat parameter view for the gradient-geometry machinery.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mollm/common.hpp"
#include "mollm/losses.hpp"
#include "mollm/rng.hpp"

namespace mollm {

struct ModelDims {
  int vocab = 32;        // C
  int embed_width = 8;   // E
  int window = 2;        // W
};

inline void validate_dims(const ModelDims& d) {
  if (d.vocab < 1 || d.embed_width < 1 || d.window < 1) {
    throw ValidationError("ModelDims: all dimensions must be >= 1");
  }
}

inline Index param_count(const ModelDims& d) {
  return static_cast<Index>(d.vocab) * d.embed_width +
         static_cast<Index>(d.embed_width) * d.window * d.vocab + d.vocab;
}

template <class Scalar>
struct ModelParams {
  ModelDims dims;
  Matrix<Scalar> embed;   // C x E
  Matrix<Scalar> decode;  // (E*W) x C
  Vector<Scalar> bias;    // C
};

/// Entries uniform in [-0.1, 0.1], bias zero, deterministic in the seed.
template <class Scalar = double>
ModelParams<Scalar> init_model(const ModelDims& dims, std::uint64_t seed) {
  validate_dims(dims);
  SeededRng rng(seed);
  ModelParams<Scalar> p;
  p.dims = dims;
  p.embed.resize(dims.vocab, dims.embed_width);
  p.decode.resize(static_cast<Index>(dims.embed_width) * dims.window, dims.vocab);
  p.bias = Vector<Scalar>::Zero(dims.vocab);
  for (Index r = 0; r < p.embed.rows(); ++r) {
    for (Index c = 0; c < p.embed.cols(); ++c) {
      p.embed(r, c) = static_cast<Scalar>(rng.uniform(-0.1, 0.1));
    }
  }
  for (Index r = 0; r < p.decode.rows(); ++r) {
    for (Index c = 0; c < p.decode.cols(); ++c) {
      p.decode(r, c) = static_cast<Scalar>(rng.uniform(-0.1, 0.1));
    }
  }
  return p;
}

/// Flat view, block order embed -> decode -> bias, column-major within each
/// block. unflatten(flatten(p)) is a bitwise round trip.
template <class Scalar>
Vector<Scalar> flatten(const ModelParams<Scalar>& p) {
  Vector<Scalar> out(param_count(p.dims));
  Index at = 0;
  out.segment(at, p.embed.size()) =
      Eigen::Map<const Vector<Scalar>>(p.embed.data(), p.embed.size());
  at += p.embed.size();
  out.segment(at, p.decode.size()) =
      Eigen::Map<const Vector<Scalar>>(p.decode.data(), p.decode.size());
  at += p.decode.size();
  out.segment(at, p.bias.size()) = p.bias;
  return out;
}

template <class Scalar>
ModelParams<Scalar> unflatten(const Vector<Scalar>& flat, const ModelDims& dims) {
  validate_dims(dims);
  if (flat.size() != param_count(dims)) {
    throw ValidationError("unflatten: flat vector length does not match dims");
  }
  ModelParams<Scalar> p;
  p.dims = dims;
  Index at = 0;
  p.embed = Eigen::Map<const Matrix<Scalar>>(flat.data() + at, dims.vocab, dims.embed_width);
  at += p.embed.size();
  p.decode = Eigen::Map<const Matrix<Scalar>>(
      flat.data() + at, static_cast<Index>(dims.embed_width) * dims.window, dims.vocab);
  at += p.decode.size();
  p.bias = flat.segment(at, dims.vocab);
  return p;
}

/// In-place theta += step * flat_direction, avoiding a full unflatten copy.
template <class Scalar>
void add_scaled(ModelParams<Scalar>& p, const Vector<Scalar>& flat, Scalar step) {
  if (flat.size() != param_count(p.dims)) {
    throw ValidationError("add_scaled: flat vector length does not match dims");
  }
  Index at = 0;
  Eigen::Map<Vector<Scalar>>(p.embed.data(), p.embed.size()) +=
      step * flat.segment(at, p.embed.size());
  at += p.embed.size();
  Eigen::Map<Vector<Scalar>>(p.decode.data(), p.decode.size()) +=
      step * flat.segment(at, p.decode.size());
  at += p.decode.size();
  p.bias += step * flat.segment(at, p.bias.size());
}

template <class Scalar>
bool params_finite(const ModelParams<Scalar>& p) {
  return p.embed.allFinite() && p.decode.allFinite() && p.bias.allFinite();
}

/// Concatenated context embeddings, one row per token position.
template <class Scalar>
Matrix<Scalar> gather_contexts(const ModelParams<Scalar>& p, const Eigen::MatrixXi& contexts) {
  const Index e = p.dims.embed_width;
  Matrix<Scalar> x(contexts.rows(), e * contexts.cols());
  for (Index i = 0; i < contexts.rows(); ++i) {
    for (Index w = 0; w < contexts.cols(); ++w) {
      x.row(i).segment(w * e, e) = p.embed.row(contexts(i, w));
    }
  }
  return x;
}

/// Logits for pre-gathered context features: rows of x * decode + bias.
template <class Scalar>
Matrix<Scalar> batch_logits(const ModelParams<Scalar>& p, const Matrix<Scalar>& x) {
  return (x * p.decode).rowwise() + p.bias.transpose();
}

/// Logits for one context window of `window` token indices.
template <class Scalar>
Vector<Scalar> forward(const ModelParams<Scalar>& p, const Eigen::Ref<const Eigen::VectorXi>& context) {
  if (context.size() != p.dims.window) {
    throw ValidationError("forward: context length must equal the model window");
  }
  if ((context.array() < 0).any() || (context.array() >= p.dims.vocab).any()) {
    throw ValidationError("forward: context token out of range");
  }
  Eigen::MatrixXi one(1, context.size());
  one.row(0) = context.transpose();
  const Matrix<Scalar> x = gather_contexts(p, one);
  return batch_logits(p, x).row(0).transpose();
}

/// Pull a logit-space gradient back to flat parameter space. `x` must be the
/// gather used for the forward pass of `dz`.
template <class Scalar>
Vector<Scalar> backprop_logits(const ModelParams<Scalar>& p, const Eigen::MatrixXi& contexts,
                               const Matrix<Scalar>& x, const Matrix<Scalar>& dz) {
  const Index e = p.dims.embed_width;
  Matrix<Scalar> d_embed = Matrix<Scalar>::Zero(p.embed.rows(), p.embed.cols());
  const Matrix<Scalar> d_decode = x.transpose() * dz;
  const Vector<Scalar> d_bias = dz.colwise().sum().transpose();
  const Matrix<Scalar> dx = dz * p.decode.transpose();
  for (Index i = 0; i < contexts.rows(); ++i) {
    for (Index w = 0; w < contexts.cols(); ++w) {
      d_embed.row(contexts(i, w)) += dx.row(i).segment(w * e, e);
    }
  }
  Vector<Scalar> flat(param_count(p.dims));
  Index at = 0;
  flat.segment(at, d_embed.size()) =
      Eigen::Map<const Vector<Scalar>>(d_embed.data(), d_embed.size());
  at += d_embed.size();
  flat.segment(at, d_decode.size()) =
      Eigen::Map<const Vector<Scalar>>(d_decode.data(), d_decode.size());
  at += d_decode.size();
  flat.segment(at, d_bias.size()) = d_bias;
  return flat;
}

enum class Objective { ForgetUce, ForgetGaCe, RetainCe, KlToRef };

template <class Scalar>
struct EvalResult {
  LossValue<Scalar> loss;
  Vector<Scalar> grad;
};

/// Weighted token objective with its analytic flat-parameter gradient.
/// `weights` scales each token position's contribution. For KlToRef,
/// `ref_probs` holds the frozen reference distribution per row.
template <class Scalar>
EvalResult<Scalar> weighted_loss_and_grad(const ModelParams<Scalar>& p,
                                          const Eigen::MatrixXi& contexts,
                                          const Eigen::VectorXi& targets,
                                          const Vector<Scalar>& weights, Objective objective,
                                          Scalar eps, const Matrix<Scalar>* ref_probs = nullptr) {
  const Matrix<Scalar> x = gather_contexts(p, contexts);
  const Matrix<Scalar> probs = softmax_rows(batch_logits(p, x));
  EvalResult<Scalar> out;
  Matrix<Scalar> dz;
  switch (objective) {
    case Objective::RetainCe:
      out.loss = weighted_ce(probs, targets, weights);
      dz = weighted_ce_logit_gradient(probs, targets, weights);
      break;
    case Objective::ForgetGaCe: {
      const LossValue<Scalar> ce = weighted_ce(probs, targets, weights);
      out.loss = {-ce.value, ce.diverged};
      dz = -weighted_ce_logit_gradient(probs, targets, weights);
      break;
    }
    case Objective::ForgetUce:
      check_epsilon(eps);
      out.loss = weighted_uce(probs, targets, weights, eps);
      dz = weighted_uce_logit_gradient(probs, targets, weights, eps);
      break;
    case Objective::KlToRef:
      if (ref_probs == nullptr) {
        throw ValidationError("weighted_loss_and_grad: KlToRef needs reference probabilities");
      }
      out.loss = weighted_kl(*ref_probs, probs, weights);
      dz = weighted_kl_logit_gradient(*ref_probs, probs, weights);
      break;
  }
  out.grad = backprop_logits(p, contexts, x, dz);
  return out;
}

/// Objective value and full-batch analytic gradient over one TokenBatch.
/// CE-family objectives average over the batch's K tokens; KlToRef sums over
/// positions against the reference model's distributions.
template <class Scalar>
EvalResult<Scalar> loss_and_grad(const ModelParams<Scalar>& p, const TokenBatch& batch,
                                 Objective objective, Scalar eps = Scalar(0.01),
                                 const ModelParams<Scalar>* ref = nullptr) {
  validate_batch(batch);
  if (batch.vocab != p.dims.vocab) {
    throw ValidationError("loss_and_grad: batch vocabulary does not match the model");
  }
  if (batch.contexts.rows() != batch.targets.size() || batch.contexts.cols() != p.dims.window) {
    throw ValidationError("loss_and_grad: context shape does not match the model window");
  }
  const Index k = batch.targets.size();
  if (objective == Objective::KlToRef) {
    if (ref == nullptr) throw ValidationError("loss_and_grad: KlToRef needs reference params");
    if (ref->dims.vocab != p.dims.vocab || ref->dims.embed_width != p.dims.embed_width ||
        ref->dims.window != p.dims.window) {
      throw ValidationError("loss_and_grad: reference model dims mismatch");
    }
    const Matrix<Scalar> ref_probs = softmax_rows(batch_logits(*ref, gather_contexts(*ref, batch.contexts)));
    const Vector<Scalar> weights = Vector<Scalar>::Ones(k);
    return weighted_loss_and_grad(p, batch.contexts, batch.targets, weights, objective, eps,
                                  &ref_probs);
  }
  const Vector<Scalar> weights = Vector<Scalar>::Constant(k, Scalar(1) / static_cast<Scalar>(k));
  return weighted_loss_and_grad(p, batch.contexts, batch.targets, weights, objective, eps);
}

/// 2^(mean per-token base-2 cross-entropy) across every token of the given
/// batches: standard perplexity. A uniform predictor over C classes scores C.
template <class Scalar>
Scalar perplexity_fluency(const ModelParams<Scalar>& p, const std::vector<TokenBatch>& batches) {
  Scalar bits = Scalar(0);
  Index tokens = 0;
  for (const TokenBatch& batch : batches) {
    validate_batch(batch);
    if (batch.vocab != p.dims.vocab || batch.contexts.cols() != p.dims.window) {
      throw ValidationError("perplexity_fluency: batch does not match the model");
    }
    const Matrix<Scalar> probs =
        softmax_rows(batch_logits(p, gather_contexts(p, batch.contexts)));
    for (Index i = 0; i < batch.targets.size(); ++i) {
      bits -= std::log2(probs(i, batch.targets(i)));
    }
    tokens += batch.targets.size();
  }
  if (tokens == 0) throw ValidationError("perplexity_fluency: no tokens to evaluate");
  return std::exp2(bits / static_cast<Scalar>(tokens));
}

template <class Scalar>
Scalar perplexity_fluency(const ModelParams<Scalar>& p, const TokenBatch& batch) {
  return perplexity_fluency(p, std::vector<TokenBatch>{batch});
}

// ---------------------------------------------------------------------------
// Corpus: the training sequences and their forget/retain split.

enum class Split : std::uint8_t { Forget = 0, Retain = 1 };

struct Corpus {
  std::vector<std::vector<std::int32_t>> sequences;
  std::vector<Split> split_labels;
  int vocab_size = 0;
};

inline void validate_corpus(const Corpus& corpus) {
  if (corpus.vocab_size < 1) throw ValidationError("Corpus: vocab_size must be positive");
  if (corpus.sequences.size() != corpus.split_labels.size()) {
    throw ValidationError("Corpus: one split label per sequence required");
  }
  if (corpus.sequences.empty()) throw ValidationError("Corpus: no sequences");
  for (const auto& seq : corpus.sequences) {
    for (const std::int32_t token : seq) {
      if (token < 0 || token >= corpus.vocab_size) {
        throw ValidationError("Corpus: token out of range");
      }
    }
  }
}

/// Sliding-window prediction batch over one sequence: contexts are the W
/// tokens before each predicted position.
inline TokenBatch sequence_batch(const std::vector<std::int32_t>& sequence, int window,
                                 int vocab) {
  const Index k = static_cast<Index>(sequence.size()) - window;
  if (window < 1 || k < 1) {
    throw ValidationError("sequence_batch: sequence shorter than window + 1");
  }
  TokenBatch batch;
  batch.vocab = vocab;
  batch.contexts.resize(k, window);
  batch.targets.resize(k);
  for (Index i = 0; i < k; ++i) {
    for (int w = 0; w < window; ++w) batch.contexts(i, w) = sequence[i + w];
    batch.targets(i) = sequence[i + window];
  }
  return batch;
}

inline std::vector<TokenBatch> corpus_batches(const Corpus& corpus, int window, Split split) {
  std::vector<TokenBatch> out;
  for (std::size_t i = 0; i < corpus.sequences.size(); ++i) {
    if (corpus.split_labels[i] != split) continue;
    out.push_back(sequence_batch(corpus.sequences[i], window, corpus.vocab_size));
  }
  return out;
}

inline std::vector<TokenBatch> corpus_batches(const Corpus& corpus, int window) {
  std::vector<TokenBatch> out;
  for (const auto& seq : corpus.sequences) {
    out.push_back(sequence_batch(seq, window, corpus.vocab_size));
  }
  return out;
}

}  // namespace mollm
