#include "mollm/unlearn_engine.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "mollm/rng.hpp"

namespace mollm {
namespace {

struct FlatTokens {
  Eigen::MatrixXi contexts;
  Eigen::VectorXi targets;
  Eigen::VectorXd ce_weights;  // 1/K within each sequence
  Index sequences = 0;
  Index tokens() const { return targets.size(); }
};

FlatTokens flatten_split(const Corpus& corpus, int window, std::optional<Split> split) {
  Index total = 0;
  Index sequences = 0;
  for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
    if (split && corpus.split_labels[s] != *split) continue;
    const Index k = static_cast<Index>(corpus.sequences[s].size()) - window;
    if (k < 1) throw ValidationError("corpus sequence shorter than window + 1");
    total += k;
    ++sequences;
  }
  FlatTokens flat;
  flat.sequences = sequences;
  flat.contexts.resize(total, window);
  flat.targets.resize(total);
  flat.ce_weights.resize(total);
  Index at = 0;
  for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
    if (split && corpus.split_labels[s] != *split) continue;
    const TokenBatch batch = sequence_batch(corpus.sequences[s], window, corpus.vocab_size);
    const Index k = batch.targets.size();
    flat.contexts.middleRows(at, k) = batch.contexts;
    flat.targets.segment(at, k) = batch.targets;
    flat.ce_weights.segment(at, k).setConstant(1.0 / static_cast<double>(k));
    at += k;
  }
  return flat;
}

// ---------------------------------------------------------------------------
// Fast evaluation path. With a small vocabulary the per-slot products
// embed * decode_slot collapse every token's logits into a table row, so a
// full forward pass is a gather-add and the backward pass is a scatter-add
// followed by C x C sized products. Matches the reference loss_and_grad path
// up to floating-point association.

struct LogitTable {
  // slot w, transposed: column t holds the logit contribution of token t.
  std::vector<Eigen::MatrixXd> slots_t;
};

LogitTable build_table(const ModelParams<double>& p) {
  LogitTable table;
  const Index e = p.dims.embed_width;
  table.slots_t.reserve(static_cast<std::size_t>(p.dims.window));
  for (int w = 0; w < p.dims.window; ++w) {
    table.slots_t.emplace_back((p.embed * p.decode.middleRows(w * e, e)).transpose());
  }
  return table;
}

struct SplitScratch {
  Eigen::MatrixXd zt;     // C x T
  Eigen::MatrixXd z;      // T x C
  Eigen::MatrixXd probs;  // T x C
  Eigen::MatrixXd dzt;    // C x T
  Eigen::MatrixXd scatter;  // C_out x C_token, reused per slot
};

void table_forward(const LogitTable& table, const Vector<double>& bias,
                   const Eigen::MatrixXi& contexts, SplitScratch& s) {
  const Index t_count = contexts.rows();
  const int window = static_cast<int>(contexts.cols());
  const Index vocab = table.slots_t.front().rows();
  s.zt.resize(vocab, t_count);
  for (Index i = 0; i < t_count; ++i) {
    auto col = s.zt.col(i);
    col = table.slots_t[0].col(contexts(i, 0));
    for (int w = 1; w < window; ++w) col += table.slots_t[static_cast<std::size_t>(w)].col(contexts(i, w));
  }
  s.zt.colwise() += bias;
  s.z = s.zt.transpose();
  s.probs = softmax_rows(s.z);
}

// Flat gradient from the logit gradient left in s.dzt (C x T).
Vector<double> table_backprop(const ModelParams<double>& p, const Eigen::MatrixXi& contexts,
                              SplitScratch& s) {
  const Index e = p.dims.embed_width;
  const Index vocab = p.dims.vocab;
  const int window = p.dims.window;
  Eigen::MatrixXd d_embed = Eigen::MatrixXd::Zero(vocab, e);
  Eigen::MatrixXd d_decode(p.decode.rows(), p.decode.cols());
  for (int w = 0; w < window; ++w) {
    s.scatter.setZero(vocab, vocab);  // out class x token
    for (Index i = 0; i < contexts.rows(); ++i) {
      s.scatter.col(contexts(i, w)) += s.dzt.col(i);
    }
    // dD_w = embed' S_w, dEmbed += S_w D_w'.
    d_decode.middleRows(w * e, e) = (s.scatter * p.embed).transpose();
    d_embed += (p.decode.middleRows(w * e, e) * s.scatter).transpose();
  }
  const Eigen::VectorXd d_bias = s.dzt.rowwise().sum();

  Vector<double> flat(param_count(p.dims));
  Index at = 0;
  flat.segment(at, d_embed.size()) =
      Eigen::Map<const Eigen::VectorXd>(d_embed.data(), d_embed.size());
  at += d_embed.size();
  flat.segment(at, d_decode.size()) =
      Eigen::Map<const Eigen::VectorXd>(d_decode.data(), d_decode.size());
  at += d_decode.size();
  flat.segment(at, d_bias.size()) = d_bias;
  return flat;
}

struct EngineWorkspace {
  FlatTokens fgt;
  FlatTokens rt;
  Eigen::MatrixXd ref_probs;       // retain tokens x C, frozen at theta0
  Eigen::VectorXd ref_self_terms;  // per retain token: sum_c r log r
  Eigen::VectorXd kl_weights;
  SplitScratch fgt_scratch;
  SplitScratch rt_scratch;
};

EngineWorkspace build_workspace(const ModelParams<double>& ref, const Corpus& corpus,
                                KlNormalization normalization) {
  EngineWorkspace ws;
  ws.fgt = flatten_split(corpus, ref.dims.window, Split::Forget);
  ws.rt = flatten_split(corpus, ref.dims.window, Split::Retain);
  if (ws.fgt.tokens() == 0 || ws.rt.tokens() == 0) {
    throw ValidationError("unlearning needs non-empty forget and retain splits");
  }
  const LogitTable ref_table = build_table(ref);
  table_forward(ref_table, ref.bias, ws.rt.contexts, ws.rt_scratch);
  ws.ref_probs = ws.rt_scratch.probs;
  ws.ref_self_terms.resize(ws.rt.tokens());
  for (Index i = 0; i < ws.rt.tokens(); ++i) {
    double acc = 0.0;
    for (Index c = 0; c < ws.ref_probs.cols(); ++c) {
      const double r = ws.ref_probs(i, c);
      if (r > 0.0) acc += r * std::log(r);
    }
    ws.ref_self_terms(i) = acc;
  }
  ws.kl_weights = normalization == KlNormalization::Sum
                      ? Eigen::VectorXd::Ones(ws.rt.tokens())
                      : Eigen::VectorXd::Constant(ws.rt.tokens(),
                                                  1.0 / static_cast<double>(ws.rt.tokens()));
  return ws;
}

struct ObjectiveEval {
  Eigen::MatrixXd rows;  // 3 x n, canonical order fgt, KL, rt
  Eigen::Vector3d losses = Eigen::Vector3d::Zero();
  Eigen::Vector3d norms = Eigen::Vector3d::Zero();
  bool diverged = false;
  bool finite = true;
};

// One forward pass over the retain split serves both the KL and rt
// objectives; the forget split gets its own pass.
ObjectiveEval eval_objectives(const ModelParams<double>& params, EngineWorkspace& ws,
                              ForgetMode fgt_mode, double eps) {
  ObjectiveEval eval;
  eval.rows.resize(3, param_count(params.dims));
  const LogitTable table = build_table(params);

  table_forward(table, params.bias, ws.fgt.contexts, ws.fgt_scratch);
  const Eigen::MatrixXd& probs_f = ws.fgt_scratch.probs;
  if (fgt_mode == ForgetMode::Uce) {
    const LossValue<double> loss = weighted_uce(probs_f, ws.fgt.targets, ws.fgt.ce_weights, eps);
    eval.losses(0) = loss.value;
    eval.diverged |= loss.diverged;
    ws.fgt_scratch.dzt =
        weighted_uce_logit_gradient(probs_f, ws.fgt.targets, ws.fgt.ce_weights, eps).transpose();
    eval.rows.row(0) = table_backprop(params, ws.fgt.contexts, ws.fgt_scratch).transpose();
  } else {
    const LossValue<double> ce = weighted_ce(probs_f, ws.fgt.targets, ws.fgt.ce_weights);
    eval.losses(0) = -ce.value;
    eval.diverged |= ce.diverged;
    ws.fgt_scratch.dzt =
        -weighted_ce_logit_gradient(probs_f, ws.fgt.targets, ws.fgt.ce_weights).transpose();
    eval.rows.row(0) = table_backprop(params, ws.fgt.contexts, ws.fgt_scratch).transpose();
  }

  table_forward(table, params.bias, ws.rt.contexts, ws.rt_scratch);
  const Eigen::MatrixXd& probs_r = ws.rt_scratch.probs;

  // KL(ref || current); the masked path only runs if some probability
  // underflowed to zero.
  Eigen::VectorXd cross(ws.rt.tokens());
  const Eigen::ArrayXXd log_probs = probs_r.array().log();
  if ((probs_r.array() > 0.0).all()) {
    cross = (ws.ref_probs.array() * log_probs).rowwise().sum().matrix();
  } else {
    cross = (ws.ref_probs.array() > 0.0)
                .select(ws.ref_probs.array() * log_probs, 0.0)
                .rowwise()
                .sum()
                .matrix();
  }
  eval.losses(1) = ws.kl_weights.dot(ws.ref_self_terms - cross);
  eval.diverged |= !std::isfinite(eval.losses(1));
  ws.rt_scratch.dzt =
      weighted_kl_logit_gradient(ws.ref_probs, probs_r, ws.kl_weights).transpose();
  eval.rows.row(1) = table_backprop(params, ws.rt.contexts, ws.rt_scratch).transpose();

  const LossValue<double> rt_loss = weighted_ce(probs_r, ws.rt.targets, ws.rt.ce_weights);
  eval.losses(2) = rt_loss.value;
  eval.diverged |= rt_loss.diverged;
  ws.rt_scratch.dzt =
      weighted_ce_logit_gradient(probs_r, ws.rt.targets, ws.rt.ce_weights).transpose();
  eval.rows.row(2) = table_backprop(params, ws.rt.contexts, ws.rt_scratch).transpose();

  eval.norms = eval.rows.rowwise().norm();
  eval.finite = eval.rows.allFinite();
  return eval;
}

// Min-norm residual over the objectives whose gradient has not vanished. A
// zero gradient (g_KL at round 0, where the model still equals the
// reference) satisfies Definition-1 trivially and would spuriously stop the
// run; it carries no information about common descent on the live
// objectives. All-zero gradients yield residual 0: a genuine optimum.
double active_stationarity_residual(const Eigen::MatrixXd& rows) {
  std::vector<Index> active;
  for (Index i = 0; i < rows.rows(); ++i) {
    if (rows.row(i).norm() > 0.0) active.push_back(i);
  }
  if (active.empty()) return 0.0;
  Eigen::MatrixXd live(static_cast<Index>(active.size()), rows.cols());
  for (std::size_t k = 0; k < active.size(); ++k) live.row(static_cast<Index>(k)) = rows.row(active[k]);
  return pareto_stationarity_measure(GradientSet<double>(std::move(live))).residual_norm;
}

Eigen::MatrixXd clip_rows(const Eigen::MatrixXd& rows, const std::optional<double>& clip_norm) {
  if (!clip_norm) return rows;
  Eigen::MatrixXd clipped = rows;
  for (Index i = 0; i < clipped.rows(); ++i) {
    const double norm = clipped.row(i).norm();
    if (norm > *clip_norm) clipped.row(i) *= *clip_norm / norm;
  }
  return clipped;
}

// Weighted CE value and gradient over a prepared token set (weights already
// include any 1/N sequence normalization), via the table path.
EvalResult<double> table_ce_step(const ModelParams<double>& params, const FlatTokens& tokens,
                                 SplitScratch& scratch) {
  const LogitTable table = build_table(params);
  table_forward(table, params.bias, tokens.contexts, scratch);
  EvalResult<double> result;
  result.loss = weighted_ce(scratch.probs, tokens.targets, tokens.ce_weights);
  scratch.dzt =
      weighted_ce_logit_gradient(scratch.probs, tokens.targets, tokens.ce_weights).transpose();
  result.grad = table_backprop(params, tokens.contexts, scratch);
  return result;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::Mollm: return "mollm";
    case Method::GaWeightedSum: return "ga_weighted_sum";
    case Method::GaOgd: return "ga_ogd";
    case Method::RetainFinetune: return "retain_finetune";
    case Method::Relabeling: return "relabeling";
    case Method::Ablation1CeGa: return "ablation1_ce_ga";
    case Method::Ablation2CeGaSmallLr: return "ablation2_ce_ga_small_lr";
    case Method::Ablation3ForgetOnly: return "ablation3_forget_only";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (const Method m : all_methods()) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

std::vector<Method> all_methods() {
  return {Method::Mollm,          Method::GaWeightedSum,
          Method::GaOgd,          Method::RetainFinetune,
          Method::Relabeling,     Method::Ablation1CeGa,
          Method::Ablation2CeGaSmallLr, Method::Ablation3ForgetOnly};
}

bool uses_ga_forget_loss(Method method) {
  switch (method) {
    case Method::GaWeightedSum:
    case Method::GaOgd:
    case Method::Ablation1CeGa:
    case Method::Ablation2CeGaSmallLr:
      return true;
    default:
      return false;
  }
}

bool uses_gradient_set_direction(Method method) {
  return method != Method::RetainFinetune && method != Method::Relabeling;
}

void validate_config(const UnlearnConfig& config) {
  if (!(config.lr0 > 0.0)) throw ValidationError("UnlearnConfig: lr0 must be positive");
  if (!(config.lr_decay > 0.0 && config.lr_decay <= 1.0)) {
    throw ValidationError("UnlearnConfig: lr_decay must lie in (0, 1]");
  }
  if (config.rounds < 1) throw ValidationError("UnlearnConfig: rounds must be >= 1");
  check_epsilon(config.epsilon);
  if ((config.weights.array() < 0.0).any() || config.weights.sum() <= 0.0) {
    throw ValidationError("UnlearnConfig: weights must be non-negative, not all zero");
  }
  if (config.clip_norm && !(*config.clip_norm > 0.0)) {
    throw ValidationError("UnlearnConfig: clip_norm must be positive when set");
  }
}

UnlearnConfig default_config(Method method) {
  UnlearnConfig config;
  config.method = method;
  if (uses_ga_forget_loss(method)) config.clip_norm = 1.0;
  if (method == Method::Ablation2CeGaSmallLr) config.lr0 = 0.005;  // ablation 1 / 10
  return config;
}

ObjectiveGradients compute_objective_gradients(const ModelParams<double>& params,
                                               const ModelParams<double>& ref_params,
                                               const Corpus& corpus,
                                               const UnlearnConfig& config) {
  validate_config(config);
  validate_corpus(corpus);
  if (params.dims.vocab != corpus.vocab_size) {
    throw ValidationError("compute_objective_gradients: model/corpus vocabulary mismatch");
  }
  if (ref_params.dims.vocab != params.dims.vocab ||
      ref_params.dims.embed_width != params.dims.embed_width ||
      ref_params.dims.window != params.dims.window) {
    throw ValidationError("compute_objective_gradients: reference model dims mismatch");
  }
  EngineWorkspace ws = build_workspace(ref_params, corpus, config.kl_normalization);
  const ForgetMode mode =
      uses_ga_forget_loss(config.method) ? ForgetMode::GaCe : ForgetMode::Uce;
  const ObjectiveEval eval = eval_objectives(params, ws, mode, config.epsilon);
  if (!eval.finite) throw DivergenceError("objective gradients are non-finite");
  return ObjectiveGradients{
      GradientSet<double>(clip_rows(eval.rows, config.clip_norm),
                          GradientSet<double>::canonical_labels()),
      eval.losses, eval.norms, eval.diverged};
}

DirectionResult<double> direction_for_method(const GradientSet<double>& gradients,
                                             const UnlearnConfig& config) {
  if (gradients.count() < 1) throw ValidationError("direction_for_method: empty gradient set");
  switch (config.method) {
    case Method::Mollm:
    case Method::Ablation1CeGa:
    case Method::Ablation2CeGaSmallLr:
      return common_descent_direction(gradients);
    case Method::GaWeightedSum: {
      if (gradients.count() != 3) {
        throw ValidationError("ga_weighted_sum needs the three canonical gradients");
      }
      DirectionResult<double> out;
      out.direction = -(gradients.rows().transpose() * config.weights);
      out.dual_norms = Vector<double>::Zero(3);
      out.degenerate_mask = BoolArray::Constant(3, false);
      out.dot_products = gradients.rows() * out.direction;
      return out;
    }
    case Method::GaOgd: {
      if (gradients.count() != 3) {
        throw ValidationError("ga_ogd needs the three canonical gradients");
      }
      DirectionResult<double> out;
      out.direction = -project_to_null_space(gradients.gradient(0), gradients.rows().bottomRows(2));
      out.dual_norms = Vector<double>::Zero(3);
      out.degenerate_mask = BoolArray::Constant(3, false);
      out.dot_products = gradients.rows() * out.direction;
      return out;
    }
    case Method::Ablation3ForgetOnly: {
      DirectionResult<double> out;
      out.direction = -gradients.gradient(0);
      out.dual_norms = Vector<double>::Zero(gradients.count());
      out.degenerate_mask = BoolArray::Constant(gradients.count(), false);
      out.dot_products = gradients.rows() * out.direction;
      return out;
    }
    case Method::RetainFinetune:
    case Method::Relabeling:
      throw ValidationError("fine-tuning baselines descend plain CE, not a gradient-set direction");
  }
  throw ValidationError("direction_for_method: unknown method");
}

Corpus relabel_forget_targets(const Corpus& corpus, int window, std::uint64_t seed) {
  validate_corpus(corpus);
  Corpus modified = corpus;
  SeededRng rng(seed);
  for (std::size_t s = 0; s < modified.sequences.size(); ++s) {
    if (modified.split_labels[s] != Split::Forget) continue;
    auto& seq = modified.sequences[s];
    for (std::size_t i = static_cast<std::size_t>(window); i < seq.size(); ++i) {
      seq[i] = rng.uniform_int(modified.vocab_size);
    }
  }
  return modified;
}

UnlearnOutcome run_unlearning(const ModelParams<double>& theta0, const Corpus& corpus,
                              const UnlearnConfig& config, const RoundObserver& observer) {
  validate_config(config);
  validate_corpus(corpus);
  if (theta0.dims.vocab != corpus.vocab_size) {
    throw ValidationError("run_unlearning: model/corpus vocabulary mismatch");
  }
  EngineWorkspace ws = build_workspace(theta0, corpus, config.kl_normalization);
  const ForgetMode fgt_mode =
      uses_ga_forget_loss(config.method) ? ForgetMode::GaCe : ForgetMode::Uce;

  UnlearnOutcome out{theta0, {}, false, false, {}};
  if (config.method == Method::RetainFinetune) {
    out.params = init_model(theta0.dims, config.seed);
  }

  // Training token set for the plain CE fine-tuning baselines, with mean
  // normalization over their sequences.
  std::optional<FlatTokens> train_tokens;
  SplitScratch train_scratch;
  if (config.method == Method::Relabeling) {
    const Corpus modified = relabel_forget_targets(corpus, theta0.dims.window, config.seed);
    FlatTokens flat = flatten_split(modified, theta0.dims.window, std::nullopt);
    flat.ce_weights /= static_cast<double>(flat.sequences);
    train_tokens = std::move(flat);
  }

  out.records.reserve(static_cast<std::size_t>(config.rounds));
  for (int round = 0; round < config.rounds; ++round) {
    const ObjectiveEval eval = eval_objectives(out.params, ws, fgt_mode, config.epsilon);
    if (!eval.finite) {
      out.aborted = true;
      out.abort_reason = "non-finite objective gradients at round " + std::to_string(round);
      break;
    }
    const GradientSet<double> raw_set(eval.rows, GradientSet<double>::canonical_labels());

    Vector<double> direction;
    if (uses_gradient_set_direction(config.method)) {
      const GradientSet<double> work_set(clip_rows(eval.rows, config.clip_norm),
                                         GradientSet<double>::canonical_labels());
      direction = direction_for_method(work_set, config).direction;
    } else if (config.method == Method::RetainFinetune) {
      // Mean CE over the retain split: the diagnostic rt gradient rescaled.
      direction = -eval.rows.row(2).transpose() / static_cast<double>(ws.rt.sequences);
    } else {
      direction = -table_ce_step(out.params, *train_tokens, train_scratch).grad;
    }

    UpdateRecord record;
    record.round = round;
    record.losses = eval.losses;
    record.grad_norms = eval.norms;
    record.direction_norm = direction.norm();
    const BoolArray flags = conflict_diagnostics(direction, raw_set);
    record.conflicts = {flags(0), flags(1), flags(2)};
    record.stationarity_residual = active_stationarity_residual(eval.rows);
    out.records.push_back(record);
    if (observer) observer(out.params, record);

    if (record.stationarity_residual <= kStationarityStopResidual) {
      out.early_stopped = true;
      break;
    }
    const double step = config.lr0 * std::pow(config.lr_decay, round);
    add_scaled(out.params, direction, step);
    if (!params_finite(out.params)) {
      out.aborted = true;
      out.abort_reason = "non-finite parameters after round " + std::to_string(round);
      break;
    }
  }
  return out;
}

Eigen::Vector3d conflict_probabilities(const std::vector<UpdateRecord>& records) {
  if (records.empty()) throw ValidationError("conflict_probabilities: no records");
  Eigen::Vector3d counts = Eigen::Vector3d::Zero();
  for (const UpdateRecord& record : records) {
    for (int i = 0; i < 3; ++i) {
      if (record.conflicts[static_cast<std::size_t>(i)]) counts(i) += 1.0;
    }
  }
  return 100.0 * counts / static_cast<double>(records.size());
}

ModelParams<double> pretrain(const ModelParams<double>& model, const Corpus& corpus, int epochs,
                             double lr, int batch_size, std::uint64_t shuffle_seed) {
  validate_corpus(corpus);
  if (model.dims.vocab != corpus.vocab_size) {
    throw ValidationError("pretrain: model/corpus vocabulary mismatch");
  }
  if (epochs < 0) throw ValidationError("pretrain: epochs must be >= 0");
  if (!(lr > 0.0)) throw ValidationError("pretrain: lr must be positive");

  FlatTokens all = flatten_split(corpus, model.dims.window, std::nullopt);
  all.ce_weights /= static_cast<double>(all.sequences);

  ModelParams<double> params = model;
  SplitScratch scratch;
  SeededRng rng(shuffle_seed);
  std::vector<TokenBatch> batches;
  std::vector<Index> order;
  if (batch_size > 0) {
    batches = corpus_batches(corpus, model.dims.window);
    order.resize(batches.size());
    std::iota(order.begin(), order.end(), Index{0});
  }
  double previous_loss = std::numeric_limits<double>::infinity();

  for (int epoch = 0; epoch < epochs; ++epoch) {
    double epoch_loss = 0.0;
    if (batch_size <= 0) {
      const EvalResult<double> result = table_ce_step(params, all, scratch);
      if (!std::isfinite(result.loss.value) || !result.grad.allFinite()) {
        throw DivergenceError("pretrain: loss diverged at epoch " + std::to_string(epoch));
      }
      add_scaled(params, result.grad, -lr);
      epoch_loss = result.loss.value;
    } else {
      // Seeded shuffle over sequences, then plain SGD over chunks.
      rng.shuffle(order);
      for (std::size_t begin = 0; begin < order.size();
           begin += static_cast<std::size_t>(batch_size)) {
        const std::size_t end =
            std::min(order.size(), begin + static_cast<std::size_t>(batch_size));
        Vector<double> grad = Vector<double>::Zero(param_count(params.dims));
        for (std::size_t i = begin; i < end; ++i) {
          const auto result = loss_and_grad(params, batches[static_cast<std::size_t>(order[i])],
                                            Objective::RetainCe);
          grad += result.grad;
        }
        grad /= static_cast<double>(end - begin);
        add_scaled(params, grad, -lr);
      }
      const EvalResult<double> check = table_ce_step(params, all, scratch);
      epoch_loss = check.loss.value;
    }
    if (!params_finite(params)) {
      throw DivergenceError("pretrain: parameters diverged at epoch " + std::to_string(epoch));
    }
    if (previous_loss - epoch_loss < 1e-6) break;
    previous_loss = epoch_loss;
  }
  return params;
}

}  // namespace mollm
