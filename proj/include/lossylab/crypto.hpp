#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lossylab/szk.hpp"

namespace lossylab {

// One-way function candidate built from the Algorithm-1 circuits. The
// single-branch variant is F := C0(·); the two-branch variant selects
// C0 or C1[y*] by the bit b, with y* drawn from U_{K_a} at construction.
struct OwfCandidate {
  enum class Variant { SingleBranch, TwoBranch };
  Variant variant = Variant::SingleBranch;
  CircuitDescriptor c0, c1;
  std::uint32_t y_star = 0;
  AdviceDraw advice;
};

OwfCandidate make_owf_candidate(const StochasticReduction& r, const PromiseProblem& problem,
                                const PermInvariantF& f, const DisguiseCollection& coll,
                                OwfCandidate::Variant variant, std::uint64_t seed);

// Deterministic evaluation at fixed (b, r); the single-branch variant treats
// b as 0. r must be kappa() bits and decode below the randomness domain.
std::uint64_t owf_eval(const OwfCandidate& cand, int b, std::uint64_t r);
std::uint64_t owf_eval_bits(const OwfCandidate& cand, int b, const std::string& r_bits);

// ---------------------------------------------------------------------------
// Image restriction (the proof's A-set)

struct RestrictedSupports {
  std::vector<std::uint64_t> a_set;  // outcomes with Pr_D0 ≥ Pr_D1
  Dist law0, law1;                   // conditional laws on A and its complement
  Rat retained0, retained1;          // masses kept by the restriction
  Rat delta0, delta1;                // Δ(original law, restricted law)
  Rat pair_distance;                 // Δ(D0, D1)
  bool premise_violated = false;     // Δ(D0, D1) < 1 − 2μ for the claimed μ
};

RestrictedSupports restricted_supports(const Dist& d0, const Dist& d1, const Rat& mu);

// ---------------------------------------------------------------------------
// Inverter adversaries

struct InverterOracle {
  enum class Strategy { BruteForce, AlwaysFail, Planted };
  Strategy strategy = Strategy::BruteForce;
  std::uint64_t planted_r = 0;

  std::uint64_t queries = 0;
  std::uint64_t successes = 0;

  // Returns a randomness r' with c0.eval(r') = z when the strategy finds one.
  std::optional<std::uint64_t> invert(std::uint64_t z, const CircuitDescriptor& c0);

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> image_cache_;
  const CircuitDescriptor* cached_for_ = nullptr;
};

// ---------------------------------------------------------------------------
// OWF dichotomy (decision procedure C^A)

struct OwfInstanceResult {
  std::uint32_t y = 0;
  Chi chi = Chi::Star;
  Rat exact_x;             // |Pr(B=1|b=0) − Pr(B=1|b=1)| by full enumeration
  Rat exact_restricted_x;  // same statistic on the support-restricted pair
  double estimate_x = 0;   // sampled at k trials
  std::uint64_t trials_b0 = 0, trials_b1 = 0;
  bool decided_yes = false;
  bool correct = false;
  bool restricted_disjoint = false;
  Rat retained0, retained1;
};

struct DichotomyReport {
  double theta_owf = 0;
  std::uint64_t k = 0;              // ⌈64/θ²⌉
  double delta_plus_gamma = 0;
  double decision_threshold = 0;    // δ + γ + θ/4
  std::vector<OwfInstanceResult> instances;
  bool all_correct = false;
  bool no_side_bound_violated = false;  // exact X on a NO instance exceeded δ+γ
  std::uint64_t inverter_queries = 0;
};

// For every promise instance, runs B^A for k = ⌈64/θ_owf²⌉ repetitions
// (sample r and b, hand C_b(r) to the inverter, check C0 on its answer),
// estimates X, and decides YES iff the estimate exceeds δ+γ+θ/4. The exact X
// is enumerated alongside the sampled estimate.
DichotomyReport owf_dichotomy(const StochasticReduction& r, const PromiseProblem& problem,
                              const PermInvariantF& f, const DisguiseCollection& coll,
                              InverterOracle& inverter, double theta_owf, double delta_plus_gamma,
                              const Rat& mu_claim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// EFI pair and decision procedure

struct EfiPair {
  std::uint32_t y = 0;  // sampled from U_{T_a}
  Dist law0, law1;
  Rat distance;  // Δ(law0, law1), contract ≥ 1 − 2μ
  AdviceDraw advice;
};

EfiPair efi_pair(const StochasticReduction& r, const PromiseProblem& problem,
                 const PermInvariantF& f, const DisguiseCollection& coll, std::uint64_t seed);

struct EfiDecision {
  int output = 1;  // 0 on the YES side per the proof's labeling
  bool correct = false;
  double tau = 0;
  std::uint64_t k = 0;
  double mean = 0;
  Rat q_exact;  // Pr(B = 1) for this instance, exact
};

// Decision procedure C: k = ⌈1/τ²⌉ trials of B (hand C'_b(z-dependent) to the
// optimal statistical test between the EFI laws), output 0 iff the empirical
// mean deviates from ½ by at least τ = ν/4 − 3(δ+γ)/4. k_override forces a
// repetition count for stress tests (e.g. k = 1 making Hoeffding vacuous).
EfiDecision efi_decide(const StochasticReduction& r, const PromiseProblem& problem,
                       const PermInvariantF& f, const DisguiseCollection& coll, const EfiPair& efi,
                       double nu, double delta_plus_gamma, std::uint32_t z, std::uint64_t seed,
                       std::uint64_t k_override = 0);

}  // namespace lossylab
