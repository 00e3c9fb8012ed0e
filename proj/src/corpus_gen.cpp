#include "mollm/corpus_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mollm/rng.hpp"

namespace mollm {
namespace {

// Peaked row-stochastic transitions: one dominant successor per token plus a
// uniform floor, so sequences are learnable but never deterministic.
constexpr double kDominantMass = 0.95;

Eigen::MatrixXd peaked_transitions(SeededRng& rng, int vocab) {
  const double floor_mass = (1.0 - kDominantMass) / static_cast<double>(vocab - 1);
  Eigen::MatrixXd chain = Eigen::MatrixXd::Constant(vocab, vocab, floor_mass);
  for (int row = 0; row < vocab; ++row) {
    const int dominant = rng.uniform_int(vocab);
    chain(row, dominant) = kDominantMass;
  }
  return chain;
}

int sample_row(const Eigen::MatrixXd& chain, int state, SeededRng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (int next = 0; next < chain.cols(); ++next) {
    cumulative += chain(state, next);
    if (u < cumulative) return next;
  }
  return static_cast<int>(chain.cols()) - 1;
}

std::vector<std::int32_t> sample_sequence(const Eigen::MatrixXd& chain, int length,
                                          SeededRng& rng) {
  std::vector<std::int32_t> seq;
  seq.reserve(static_cast<std::size_t>(length));
  int state = rng.uniform_int(static_cast<int>(chain.rows()));
  seq.push_back(state);
  for (int i = 1; i < length; ++i) {
    state = sample_row(chain, state, rng);
    seq.push_back(state);
  }
  return seq;
}

}  // namespace

void validate_corpus_spec(const CorpusSpec& spec) {
  if (spec.vocab < 2) throw ValidationError("CorpusSpec: vocab must be >= 2");
  if (spec.sequence_count < 2) throw ValidationError("CorpusSpec: need at least 2 sequences");
  if (spec.sequence_length < 2) throw ValidationError("CorpusSpec: sequences need length >= 2");
  if (!(spec.forget_fraction > 0.0 && spec.forget_fraction < 1.0)) {
    throw ValidationError("CorpusSpec: forget fraction must lie strictly inside (0, 1)");
  }
  if (!(spec.conflict_strength >= 0.0 && spec.conflict_strength <= 1.0)) {
    throw ValidationError("CorpusSpec: conflict_strength must lie in [0, 1]");
  }
}

ChainPair build_chains(const CorpusSpec& spec) {
  validate_corpus_spec(spec);
  SeededRng rng(spec.seed);
  ChainPair chains;
  chains.retain_chain = peaked_transitions(rng, spec.vocab);

  // Shared subset: most of the vocabulary. The permutation is a cyclic
  // derangement of the subset in shuffled order (no fixed points), identity
  // elsewhere; the forget chain swaps successor profiles among subset states
  // at conflict_strength weight.
  std::vector<int> tokens(static_cast<std::size_t>(spec.vocab));
  std::iota(tokens.begin(), tokens.end(), 0);
  rng.shuffle(tokens);
  const std::size_t subset_size = static_cast<std::size_t>(spec.vocab);
  chains.shared_subset.assign(tokens.begin(), tokens.begin() + static_cast<long>(subset_size));

  chains.permutation.resize(static_cast<std::size_t>(spec.vocab));
  std::iota(chains.permutation.begin(), chains.permutation.end(), 0);
  for (std::size_t i = 0; i < subset_size; ++i) {
    const int from = chains.shared_subset[i];
    const int to = chains.shared_subset[(i + 1) % subset_size];
    chains.permutation[static_cast<std::size_t>(from)] = to;
  }
  std::sort(chains.shared_subset.begin(), chains.shared_subset.end());

  Eigen::MatrixXd relabeled(spec.vocab, spec.vocab);
  for (int i = 0; i < spec.vocab; ++i) {
    relabeled.row(i) = chains.retain_chain.row(chains.permutation[static_cast<std::size_t>(i)]);
  }
  chains.forget_chain = (1.0 - spec.conflict_strength) * chains.retain_chain +
                        spec.conflict_strength * relabeled;
  return chains;
}

Corpus generate_corpus(const CorpusSpec& spec) {
  const ChainPair chains = build_chains(spec);

  int forget_count = static_cast<int>(std::lround(spec.forget_fraction * spec.sequence_count));
  forget_count = std::clamp(forget_count, 1, spec.sequence_count - 1);
  const int retain_count = spec.sequence_count - forget_count;

  Corpus corpus;
  corpus.vocab_size = spec.vocab;
  // Sampling uses its own stream so it is unaffected by how many draws the
  // chain construction consumed. Retain block first, then forget.
  SeededRng sampler(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  corpus.sequences.reserve(static_cast<std::size_t>(spec.sequence_count));
  corpus.split_labels.reserve(static_cast<std::size_t>(spec.sequence_count));
  for (int i = 0; i < retain_count; ++i) {
    corpus.sequences.push_back(sample_sequence(chains.retain_chain, spec.sequence_length, sampler));
    corpus.split_labels.push_back(Split::Retain);
  }
  for (int i = 0; i < forget_count; ++i) {
    corpus.sequences.push_back(sample_sequence(chains.forget_chain, spec.sequence_length, sampler));
    corpus.split_labels.push_back(Split::Forget);
  }
  return corpus;
}

std::uint64_t corpus_checksum(const Corpus& corpus) {
  std::uint64_t hash = 1469598103934665603ULL;
  const auto mix = [&hash](std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xffULL;
      hash *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(corpus.vocab_size));
  mix(corpus.sequences.size());
  for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
    mix(corpus.split_labels[s] == Split::Forget ? 1 : 2);
    for (const std::int32_t token : corpus.sequences[s]) {
      mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(token)));
    }
  }
  return hash;
}

}  // namespace mollm
