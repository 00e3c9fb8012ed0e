// Synthetic corpus generator: retain sequences from one Markov chain, forget
// sequences from an interpolation between that chain and a token-relabeled
// copy of it, so forget/retain gradient conflict is tunable.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mollm/common.hpp"
#include "mollm/toy_model.hpp"

namespace mollm {

struct CorpusSpec {
  int vocab = 32;
  int sequence_count = 400;
  int sequence_length = 16;
  double forget_fraction = 0.25;
  std::uint64_t seed = 7;
  double conflict_strength = 0.7;  // in [0, 1]
};

void validate_corpus_spec(const CorpusSpec& spec);

/// The transition structure behind a corpus: retain chain A, forget chain
/// B = (1 - conflict) A + conflict * (A relabeled by a permutation of the
/// shared token subset).
struct ChainPair {
  Eigen::MatrixXd retain_chain;
  Eigen::MatrixXd forget_chain;
  std::vector<int> shared_subset;
  std::vector<int> permutation;  // full-vocab map, identity off the subset
};

ChainPair build_chains(const CorpusSpec& spec);

Corpus generate_corpus(const CorpusSpec& spec);

/// FNV-1a over vocab size, split labels, and token stream; pins fixtures.
std::uint64_t corpus_checksum(const Corpus& corpus);

}  // namespace mollm
