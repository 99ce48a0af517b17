#pragma once

#include <span>
#include <string>
#include <vector>

namespace lossylab {

// Permutation-invariant Boolean function on m bits, stored as the profile
// f_0..f_m where f_w is the value on inputs of Hamming weight w.
struct PermInvariantF {
  int m = 0;
  std::vector<int> profile;  // size m+1, entries in {0,1}
  std::string name;

  static PermInvariantF from_profile(std::string name, std::vector<int> profile);

  bool is_constant() const;
  int eval_weight(int weight) const;
  int eval(std::span<const int> bits) const;
};

// Smallest p in [1,m] with profile[p-1] = 0 and profile[p] = 1.
// Constant functions (and profiles with no ascending flip) are rejected.
int p_of_f(const PermInvariantF& f);

PermInvariantF make_or(int m);
PermInvariantF make_and(int m);
PermInvariantF make_majority(int m);
PermInvariantF make_parity(int m);
PermInvariantF make_mod(int m, int k);
PermInvariantF make_threshold(int m, int k);

// Registry used by scenarios: "or", "and", "maj", "parity", "mod<k>",
// "threshold<k>".
PermInvariantF builtin_f(const std::string& name, int m);

}  // namespace lossylab
