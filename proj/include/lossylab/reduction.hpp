#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lossylab/boolfn.hpp"
#include "lossylab/distribution.hpp"
#include "lossylab/problems.hpp"

namespace lossylab {

// Stochastic reduction on m-tuples of n-bit instances. The kernel gives, for
// every tuple over the promise, an exact law over the output alphabet; output
// codes index into omega. The runtime label is symbolic bookkeeping only.
struct StochasticReduction {
  int m = 1;
  int n = 0;
  std::vector<std::string> omega;
  std::string runtime_label = "poly";
  std::function<Dist(std::span<const std::uint32_t>)> kernel;

  Dist row(std::span<const std::uint32_t> tuple) const;
};

// Law of R(pi(X_1,...,X_m)) for independent slot laws over instance codes;
// argument position i of R receives the slot perm[i].
Dist reduction_mixture(const StochasticReduction& r, std::span<const Dist> slots,
                       std::span<const int> perm);

std::vector<std::vector<int>> all_permutations(int m);

// ---------------------------------------------------------------------------
// f-distinguisher error

struct DistinguisherReport {
  bool vacuous = false;  // no tuple pair with differing f-values on the promise
  Rat min_delta;         // min over differing pairs of Δ(R(x̄), R(x̄'))
  Rat mu_hat;            // (1 − min_delta)/2
  std::vector<std::uint32_t> witness_a, witness_b;
};

// The unbounded optimal test achieves advantage Δ exactly, so μ̂ comes from
// exhaustive pairwise total variation over tuples with differing f-values.
DistinguisherReport distinguisher_error(const StochasticReduction& r,
                                        const PromiseProblem& problem, const PermInvariantF& f);

// ---------------------------------------------------------------------------
// Worst-case-to-distribution distance

struct WcDistReport {
  Rat d;                           // max over instances (max of both sides in split mode)
  Dist center;                     // single mode witness
  std::optional<Dist> center_yes;  // split mode witnesses
  std::optional<Dist> center_no;
  Rat d_yes, d_no;
};

// With a center given, d = max_x Δ(R(x), center). Without one, the optimal
// instance-independent witness is the Chebyshev center of the row laws over
// the probability simplex, found by exact linear programming. Split mode
// computes one center per promise side (m = 1 only).
WcDistReport wc_dist_distance(const StochasticReduction& r, const PromiseProblem& problem,
                              const std::optional<Dist>& center, bool split);

// ---------------------------------------------------------------------------
// Randomized encodings

struct RandomizedEncoding {
  StochasticReduction encoder;                 // m = 1
  std::function<int(std::uint64_t)> decode;    // outcome code -> bit
  Dist sim0, sim1;                             // simulator laws, supported in omega
};

struct EncodingCheck {
  Rat mu;  // max_x Pr[Dec(E(x)) != F(x)]
  Rat d;   // max_x Δ(Sim(F(x)), E(x))
  std::uint32_t argmax_mu = 0, argmax_d = 0;
};

EncodingCheck encoding_check(const RandomizedEncoding& re,
                             const std::function<int(std::uint32_t)>& truth,
                             std::span<const std::uint32_t> instances);

// ---------------------------------------------------------------------------
// Mild lossiness

struct MildLossinessReport {
  double lambda_hat = 0;  // sup I((X_1..X_m); R(..)) / m
  double ell_hat = 0;     // sup I, the total splitting-lossiness certificate
  bool exhaustive = false;
  std::uint64_t s_required = 0;   // ⌈2^9·m·n/γ³⌉ before capping
  std::uint64_t s_effective = 0;  // after capping at the instance-space size
  std::uint64_t candidates_per_coordinate = 0;
  std::uint64_t combos_evaluated = 0;
  std::vector<Dist> witness;  // per-coordinate laws achieving the supremum
};

// Supremum of I over independent s-uniform split distributions (each X_i
// supported inside one promise side). Enumerates every distinct multiset
// law with denominator ≤ s_effective when the combo count fits the budget,
// otherwise samples seeded random multisets and reports a lower bound.
MildLossinessReport mild_lossiness_estimate(const StochasticReduction& r,
                                            const PromiseProblem& problem, double gamma,
                                            std::uint64_t budget, std::uint64_t seed,
                                            std::optional<std::uint64_t> s_cap_override = {});

// ---------------------------------------------------------------------------
// Non-adaptive Turing reductions

// Output of one call: k queries to a target problem plus a circuit tag; the
// tag selects a finite decision table over the (query, answer) transcript.
struct TuringReduction {
  int n = 0;
  int k = 1;
  PromiseProblem target;
  int num_tags = 1;
  std::function<Dist(std::uint32_t)> law;  // instance -> law over packed (queries, tag)
  std::function<int(int tag, std::span<const std::uint32_t> queries, std::span<const int> answers)>
      evaluate;
  std::string runtime_label = "poly";

  std::uint64_t pack(std::span<const std::uint32_t> queries, int tag) const;
  void unpack(std::uint64_t code, std::vector<std::uint32_t>& queries, int& tag) const;
};

struct TuringHintReport {
  Rat d_hat;    // max_x Δ(query-tuple law, pooled center)
  Dist center;  // Chebyshev center of the query-tuple laws
  double h_hat = 0;  // sup over sampled s-uniform X of I((X, Y_1..Y_k); C)
  bool exhaustive = false;
  std::uint64_t combos_evaluated = 0;
};

TuringHintReport turing_hint_information(const TuringReduction& rt, const PromiseProblem& problem,
                                         double gamma, std::uint64_t budget, std::uint64_t seed);

// Advantage of the reduction-semantics distinguisher: answer the queries with
// the target's exhaustive solver, evaluate the tag circuit, and accept iff it
// reproduces chi of the hinted instance.
Rat simulated_distinguisher_advantage(const TuringReduction& rt, const PromiseProblem& problem,
                                      std::uint32_t x, std::uint32_t x_prime);

// Full-output view so the pairwise-Δ machinery applies to Turing outputs.
StochasticReduction as_stochastic(const TuringReduction& rt, const PromiseProblem& problem);

// ---------------------------------------------------------------------------
// Builders

// Registered builders:
//   "parity-or"  params: m, optional flip probability (output = OR of
//                parities, flipped with probability q)
//   "identity"   params: m (output = the input tuple itself)
//   "constant"   params: m (single-outcome alphabet)
//   "xor-encode" m=1, n=2: E(x;r) = (x1^r, x2^r)
StochasticReduction builtin_reduction(const std::string& name, const PromiseProblem& problem,
                                      int m, const Rat& flip = Rat(0));

StochasticReduction dense_reduction(int m, int n, std::vector<std::string> omega,
                                    std::vector<std::pair<std::vector<std::uint32_t>, Dist>> rows,
                                    std::string runtime_label = "poly");

// The XOR randomized encoding for 2-bit parity, with its decoder and
// simulator pair.
RandomizedEncoding xor_encoding(const PromiseProblem& parity2);

// Wraps a reduction with an output channel that flips the (binary) outcome
// with probability q; used by noise-monotonicity checks.
StochasticReduction with_binary_noise(const StochasticReduction& r, const Rat& q);

}  // namespace lossylab
