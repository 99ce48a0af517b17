#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lossylab/distribution.hpp"
#include "lossylab/rng.hpp"

namespace lossylab {

// Zero-sum matrix game. Player 1 picks a row and minimizes, Player 2 picks a
// column and maximizes; entries are the payoff Player 2 receives.
struct PayoffMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> entries;  // row-major
  std::vector<std::string> row_labels, col_labels;

  static PayoffMatrix zeros(std::size_t rows, std::size_t cols);
  Rat& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  Rat max_entry() const;
  Rat min_entry() const;
};

struct MixedStrategy {
  int player = 1;
  std::vector<Rat> probs;  // over that player's pure strategies
  // s-uniform witness: multiset of pure-strategy indices whose uniform law
  // equals probs (present only for sparsified strategies)
  std::optional<std::vector<std::size_t>> multiset;
};

struct GameSolution {
  Rat value;              // ω(M)
  MixedStrategy p1, p2;   // optimal strategies
  Rat primal_objective;   // the two LP objectives, equal by exact duality
  Rat dual_objective;
};

// Exact value and optimal strategies via one rational LP; verifies internally
// that min_P max_j = max_Q min_i = ω before returning.
GameSolution game_value(const PayoffMatrix& m);

// Exact payoff the strategy secures: max_j for Player 1, min_i for Player 2.
Rat secured_payoff(const PayoffMatrix& m, const MixedStrategy& strat);

struct SparsifyOptions {
  std::uint64_t seed = 0;
  int max_retries = 500;
  std::uint64_t exhaustive_cap = 1'000'000;  // multiset-space size limit
  std::optional<std::size_t> s_override;
};

struct SparsifyResult {
  bool certified = false;
  MixedStrategy strategy;
  std::size_t s = 0;
  Rat secured;  // exact re-verified payoff of the multiset strategy
  Rat allowed;  // ω + ε(Mmax−Mmin) for Player 1 (resp. ω − ... for Player 2)
  int retries_used = 0;
  bool via_exhaustive = false;
};

// Lipton–Young sparsification: an s-uniform strategy with
// s = ⌈ln(#opponent pure strategies)/(2ε²)⌉ whose guaranteed payoff is within
// ε·(Mmax−Mmin) of the value. Seeded i.i.d. sampling from the optimal mixed
// strategy with exact re-verification; falls back to exhaustive multiset
// search over the optimal support (then over all pure strategies) when the
// space fits the cap. A failure is reported, never silent.
SparsifyResult ly_sparsify(const PayoffMatrix& m, int player, const Rat& eps,
                           const SparsifyOptions& opt, const GameSolution* presolved = nullptr);

}  // namespace lossylab
