#pragma once

#include <cstdint>
#include <vector>

#include "lossylab/distribution.hpp"
#include "lossylab/game.hpp"
#include "lossylab/reduction.hpp"

namespace lossylab {

// δ(ℓ, m) = min{ √(ℓ·ln2 / 2m), 1 − 2^{−ℓ/m−2} }. With m = 1 this is the
// single-coordinate δ(λ) the theorem thresholds use.
double delta_of(double ell, int m);

// Expected output shift when one fresh sample replaces a slot:
//   E_{y∼D0, π}[ Δ( R(π(D0^{m0}, y, D1^{m1})), R(π(D0^{m0+1}, D1^{m1})) ) ]
// by exact enumeration of tuples and permutations. Requires m0+m1+1 = R.m.
Rat distributional_stability(const StochasticReduction& r, const Dist& d0, const Dist& d1, int m0,
                             int m1);

struct DisguiseCollection {
  int s = 0;                // number of (K_a, T_a) pairs
  int d = 0;                // multiset size
  int m = 0, m0 = 0, m1 = 0;
  Rat epsilon;
  double ell = 0;           // certified (or assumed) total splitting lossiness
  // size-d multisets, sorted; K_a ⊆ S0, T_a ⊆ S1
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> pairs;
  std::vector<std::uint32_t> s0, s1;

  double apriori_bound = 0;  // δ(ℓ,m) + 2(m+1)/(d+1) + 2ε
  Rat achieved;              // exact max_y E_{a,π}[Δ], over y in both S0 and S1 cases
  Rat game_value;            // ω of the underlying zero-sum game

  bool degenerate = false;     // an inhabited side was required but empty
  bool b_yes_empty = false;    // S1 (YES side) empty  -> Algorithm-1 advice bit b_Y
  bool b_no_empty = false;     // S0 (NO side) empty   -> advice bit b_N
  std::uint64_t s_required_ground = 0;   // ⌈ln|S0∪S1| / 2ε²⌉ (used)
  std::uint64_t s_required_ambient = 0;  // ⌈n·ln2 / 2ε²⌉ (recorded)
  bool sparsify_certified = false;
  bool sparsify_exhaustive = false;
};

// Builds the payoff matrix of the disguising game (Player 1 picks a pair of
// size-d multisets, Player 2 picks y ∈ S0 ∪ S1, payoff is the expected output
// shift for the matching case), solves it exactly, sparsifies Player 1's
// optimal strategy to s uniform picks, and certifies both the a-priori bound
// and the exact achieved value.
DisguiseCollection build_disguising_collection(const StochasticReduction& r,
                                               std::vector<std::uint32_t> s0,
                                               std::vector<std::uint32_t> s1, int m0, int m1,
                                               int d, const Rat& epsilon, double ell,
                                               std::uint64_t seed, int jobs = 1);

// The per-case payoff entry, exposed for cross-module consistency checks.
Rat disguise_payoff(const StochasticReduction& r, std::span<const std::uint32_t> k_multiset,
                    std::span<const std::uint32_t> t_multiset, std::uint32_t y, bool y_in_s0,
                    int m0, int m1);

// Enumerates size-d multisets (sorted) over a ground set.
std::vector<std::vector<std::uint32_t>> multisets_of(std::span<const std::uint32_t> ground, int d);

}  // namespace lossylab
