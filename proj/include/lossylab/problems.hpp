#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lossylab/bits.hpp"

namespace lossylab {

enum class Chi : int { No = 0, Yes = 1, Star = 2 };

// Finite promise problem at a fixed bit length n. Instance sets are sorted,
// deduplicated and disjoint; instances are n-bit strings encoded as integers.
struct PromiseProblem {
  std::string name;
  int n = 0;
  std::vector<std::uint32_t> yes;
  std::vector<std::uint32_t> no;

  static PromiseProblem make(std::string name, int n, std::vector<std::uint32_t> yes,
                             std::vector<std::uint32_t> no);

  bool in_yes(std::uint32_t x) const;
  bool in_no(std::uint32_t x) const;
  bool in_promise(std::uint32_t x) const { return in_yes(x) || in_no(x); }

  // yes ∪ no in sorted order
  std::vector<std::uint32_t> promise() const;

  std::size_t promise_size() const { return yes.size() + no.size(); }
};

Chi chi(const PromiseProblem& problem, Bits x);

// Internal form once the caller has already checked the length.
Chi chi_unchecked(const PromiseProblem& problem, std::uint32_t x);

struct DecisionTable {
  std::map<std::uint32_t, Chi> entries;  // every promise instance -> chi
  std::uint64_t work = 0;                // instances evaluated
};

// Exhaustive worst-case solver; the adversary oracle at desk scale.
DecisionTable brute_force_solve(const PromiseProblem& problem);

// Registered builders: "parity", "const-yes", "ksat2", "ksat3".
// parity    : yes = odd-weight strings, no = even-weight strings
// const-yes : yes = all n-bit strings, no = ∅ (exercises the b_N advice bit)
// ksat2/3   : truth-table slice of kSAT; the n bits encode clauses of k
//             literals over 2 (k=2) or 4 (k=3) variables, yes = satisfiable
PromiseProblem builtin_problem(const std::string& name, int n);

bool is_builtin_problem(const std::string& name);

}  // namespace lossylab
