#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lossylab/rng.hpp"

namespace lossylab {

using Rat = mpq_class;

// Exact probability distribution over a finite outcome set. Outcomes are
// 64-bit codes (instance values, alphabet indices, or packed tuples); masses
// are exact rationals that sum to 1. Entries are sorted by code and strictly
// positive, so equal distributions compare equal structurally.
struct Dist {
  std::vector<std::pair<std::uint64_t, Rat>> pm;

  static Dist point(std::uint64_t x);
  // Uniform over a multiset; repeated entries get proportional mass.
  static Dist uniform(std::span<const std::uint64_t> multiset);
  static Dist uniform(std::span<const std::uint32_t> multiset);
  // Takes possibly unsorted/duplicated weighted outcomes; masses must be >= 0
  // and sum to exactly 1.
  static Dist from_masses(std::vector<std::pair<std::uint64_t, Rat>> entries);

  Rat mass(std::uint64_t x) const;
  std::size_t support_size() const { return pm.size(); }
  bool operator==(const Dist&) const = default;
};

// ½ Σ |P(x) − Q(x)|, exact.
Rat statistical_distance(const Dist& p, const Dist& q);

// Σ P(x) log2(P(x)/Q(x)) in bits; +inf when supp(P) ⊄ supp(Q); 0·log(0/·)=0.
double kl_divergence_bits(const Dist& p, const Dist& q);

// Σ P(x) log2(1/P(x)) in bits.
double entropy_bits(const Dist& p);

// log2(1 + 2Δ(P,Q)²/α) with α = min mass of the reference Q.
// The minimum is taken over Q's support and every P outcome must be covered
// by Q, otherwise the bound is undefined and we throw. Contract:
// kl_divergence_bits(p, q) <= reverse_pinsker_bound(p, q).
double reverse_pinsker_bound(const Dist& p, const Dist& q);

// Deterministic draw: identical generator state gives identical outcome.
// The 64-bit uniform is compared against exact cumulative masses.
std::uint64_t sample(const Dist& p, SplitMix64& gen);

// Convex combination; weights must sum to exactly 1.
Dist mix(std::span<const std::pair<Rat, const Dist*>> parts);

// Exact joint law over pairs of outcome codes.
struct Joint {
  struct Entry {
    std::uint64_t left;
    std::uint64_t right;
    Rat mass;
  };
  std::vector<Entry> pm;  // sorted by (left, right), positive, sums to 1

  static Joint from_entries(std::vector<Entry> entries);

  Dist left_marginal() const;
  Dist right_marginal() const;

  // I(X;Y) = Σ_y Pr(Y=y) · D_KL(X|Y=y ‖ X), in bits.
  double mutual_information_bits() const;
  // Independent route H(X)+H(Y)−H(X,Y), used as a cross-check.
  double mutual_information_via_entropies() const;
};

// Tuple packing for product/xor constructions: combines outcome codes of a
// fixed alphabet into one code. Both sides of a pair must share the codec.
struct TupleCodec {
  std::vector<std::uint64_t> alphabet;  // sorted distinct codes

  static TupleCodec for_pair(const Dist& a, const Dist& b);
  std::uint64_t index_of(std::uint64_t code) const;
  std::uint64_t pack(std::span<const std::uint64_t> codes) const;
};

// j-fold product law X^{⊗j} (outcomes packed with the codec).
Dist power_law(const Dist& x, int j, const TupleCodec& codec);

// XOR polarization step: Y_b = (X_{b_1},…,X_{b_j}) for uniform b-vector with
// parity b. Satisfies Δ(Y_0,Y_1) = Δ(X_0,X_1)^j exactly.
std::pair<Dist, Dist> xor_step(const Dist& x0, const Dist& x1, int j);

// Direct-product step: (X_0^{⊗j}, X_1^{⊗j}).
std::pair<Dist, Dist> product_step(const Dist& x0, const Dist& x1, int j);

}  // namespace lossylab
