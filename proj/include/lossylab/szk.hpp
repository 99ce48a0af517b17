#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lossylab/disguise.hpp"
#include "lossylab/distribution.hpp"
#include "lossylab/problems.hpp"
#include "lossylab/reduction.hpp"

namespace lossylab {

struct AdviceDraw {
  std::size_t a = 0;      // index into the collection's (K_a, T_a) pairs
  std::vector<int> perm;  // permutation of the m argument slots
};

AdviceDraw draw_advice(const DisguiseCollection& coll, SplitMix64& gen);

// One circuit of the SD instance. A baseline circuit samples m−p+1 instances
// from U_{K_a} and p−1 from U_{T_a}; the pinned variant replaces one K-draw
// with a fixed instance y. Randomness is the integer r = (i_1..i_m, j) in
// mixed radix: one index in [d] per draw slot (the pinned slot ignores its
// index, so a pair shares one domain) and j in [L] resolving the kernel row,
// with L the lcm of the reachable rows' mass denominators.
struct CircuitDescriptor {
  enum class Kind { FixedLaw, Baseline, Pinned };
  Kind kind = Kind::FixedLaw;

  Dist fixed_law;  // FixedLaw only

  const StochasticReduction* reduction = nullptr;
  std::vector<std::uint32_t> k_multiset, t_multiset;
  std::vector<int> perm;
  int p = 1;
  std::uint32_t pinned_y = 0;
  std::uint64_t row_lcm = 1;  // shared within a pair

  std::uint64_t randomness_size() const;  // N
  int kappa() const;                      // ⌈log2 N⌉
  std::uint64_t eval(std::uint64_t r) const;
};

struct CircuitPair {
  CircuitDescriptor c0, c1;
  bool bypass = false;  // one of the emptiness advice bits fired
  bool b_yes_empty = false, b_no_empty = false;
};

// Algorithm-1 circuit construction for instance y under the given advice.
// Consults the emptiness bits first: an empty NO side returns the canonical
// near pair (Δ = 1/4), an empty YES side the canonical far pair (Δ = 1).
CircuitPair build_instance_circuits(const StochasticReduction& r, const PromiseProblem& problem,
                                    const PermInvariantF& f, const DisguiseCollection& coll,
                                    const AdviceDraw& advice, std::uint32_t y);

Dist circuit_output_distribution(const CircuitDescriptor& c);

struct SzkGapReport {
  bool has_yes = false, has_no = false;
  Rat yes_gap_min;  // min over YES y of E_{a,π}[Δ(C0, C1[y])]
  Rat no_gap_max;   // max over NO y of the same expectation
  double theta_szk = 0;
  double yes_bound = 0;  // 1 − 2μ_claim
  double no_bound = 0;   // δ(ℓ_claim, m) + γ
  bool yes_gap_violated = false;
  bool no_gap_violated = false;

  struct PerInstance {
    std::uint32_t y = 0;
    Chi chi = Chi::Star;
    Rat expected_gap;      // over all (a, π)
    Rat fixed_advice_gap;  // at the single advice draw Algorithm 1 commits to
  };
  std::vector<PerInstance> instances;
  AdviceDraw fixed_advice;
};

// Exhaustively evaluates the YES/NO gaps of the circuit pair, both averaged
// over the advice (the theorem's displayed bound) and at one committed
// advice draw (what the algorithm actually runs).
SzkGapReport szk_gap_report(const StochasticReduction& r, const PromiseProblem& problem,
                            const PermInvariantF& f, const DisguiseCollection& coll, double gamma,
                            double mu_claim, double ell_claim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Polarization

struct PolarizeStep {
  char kind = 'x';  // 'x' = xor step, 'p' = direct product
  long long count = 0;
};

struct PolarizeResult {
  std::vector<PolarizeStep> schedule;
  // Certified closed-form bounds for the two promise branches.
  double yes_upper = 0;  // final Δ when input Δ ≤ α
  double no_lower = 0;   // final Δ when input Δ ≥ β
  bool meets_target = false;
  // Certified interval for the supplied pair's own Δ through the schedule.
  Rat input_delta;
  double supplied_lower = 0, supplied_upper = 0;
  std::optional<std::pair<Dist, Dist>> exact_laws;  // when alphabet growth permits
};

// Polarizes an (α, β) statistical-difference gap with β² > α to
// (2^{−k}, 1 − 2^{−k}): an XOR stage (Δ drops to Δ^j exactly) followed by a
// direct-product stage (Δ(X^⊗t, Y^⊗t) ≥ 1 − 2e^{−tΔ²/2}), with the counts
// chosen greedily and re-certified from the closed forms. Exact output laws
// are produced only when the output alphabet stays below the cap.
PolarizeResult polarize(const Dist& c0, const Dist& c1, double alpha, double beta, int k,
                        std::uint64_t exact_alphabet_cap = 1u << 20);

}  // namespace lossylab
