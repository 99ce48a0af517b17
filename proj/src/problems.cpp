#include "lossylab/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace lossylab {

namespace {

void sort_dedup(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PromiseProblem PromiseProblem::make(std::string name, int n, std::vector<std::uint32_t> yes,
                                    std::vector<std::uint32_t> no) {
  if (n < 0 || n > 24) throw std::invalid_argument("instance length must be in [0,24]");
  sort_dedup(yes);
  sort_dedup(no);
  const std::uint64_t space = std::uint64_t{1} << n;
  for (auto x : yes)
    if (x >= space) throw std::invalid_argument("yes instance wider than n bits");
  for (auto x : no)
    if (x >= space) throw std::invalid_argument("no instance wider than n bits");
  for (auto x : yes)
    if (std::binary_search(no.begin(), no.end(), x))
      throw std::invalid_argument("yes and no sets intersect");
  PromiseProblem p;
  p.name = std::move(name);
  p.n = n;
  p.yes = std::move(yes);
  p.no = std::move(no);
  return p;
}

bool PromiseProblem::in_yes(std::uint32_t x) const {
  return std::binary_search(yes.begin(), yes.end(), x);
}

bool PromiseProblem::in_no(std::uint32_t x) const {
  return std::binary_search(no.begin(), no.end(), x);
}

std::vector<std::uint32_t> PromiseProblem::promise() const {
  std::vector<std::uint32_t> all;
  all.reserve(yes.size() + no.size());
  std::merge(yes.begin(), yes.end(), no.begin(), no.end(), std::back_inserter(all));
  return all;
}

Chi chi(const PromiseProblem& problem, Bits x) {
  if (x.width != problem.n)
    throw std::invalid_argument("chi: instance length " + std::to_string(x.width) +
                                " does not match problem length " + std::to_string(problem.n));
  return chi_unchecked(problem, x.value);
}

Chi chi_unchecked(const PromiseProblem& problem, std::uint32_t x) {
  if (problem.in_yes(x)) return Chi::Yes;
  if (problem.in_no(x)) return Chi::No;
  return Chi::Star;
}

DecisionTable brute_force_solve(const PromiseProblem& problem) {
  DecisionTable table;
  for (auto x : problem.promise()) {
    table.entries[x] = chi_unchecked(problem, x);
    ++table.work;
  }
  return table;
}

namespace {

PromiseProblem make_parity(int n) {
  if (n < 1) throw std::invalid_argument("parity needs n >= 1");
  std::vector<std::uint32_t> yes, no;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    (Bits(x, n).parity() ? yes : no).push_back(x);
  }
  return PromiseProblem::make("parity" + std::to_string(n), n, std::move(yes), std::move(no));
}

PromiseProblem make_const_yes(int n) {
  std::vector<std::uint32_t> yes;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) yes.push_back(x);
  return PromiseProblem::make("const-yes" + std::to_string(n), n, std::move(yes), {});
}

// kSAT truth-table slice. Layout per clause: k literals, each literal is a
// variable index (1 bit for k=2 over 2 vars, 2 bits for k=3 over 4 vars)
// followed by a negation bit, MSB-first. n must be a whole number of clauses.
PromiseProblem make_ksat(int k, int n) {
  const int var_bits = (k == 2) ? 1 : 2;
  const int vars = 1 << var_bits;
  const int lit_bits = var_bits + 1;
  const int clause_bits = k * lit_bits;
  if (n % clause_bits != 0 || n == 0)
    throw std::invalid_argument("ksat" + std::to_string(k) + " needs n to be a multiple of " +
                                std::to_string(clause_bits));
  const int clauses = n / clause_bits;

  auto satisfiable = [&](std::uint32_t formula) {
    for (std::uint32_t assign = 0; assign < (std::uint32_t{1} << vars); ++assign) {
      bool all = true;
      for (int c = 0; c < clauses && all; ++c) {
        bool clause_sat = false;
        for (int l = 0; l < k; ++l) {
          int shift = n - (c * clause_bits + (l + 1) * lit_bits);
          std::uint32_t lit = (formula >> shift) & ((1u << lit_bits) - 1);
          std::uint32_t var = lit >> 1;
          bool neg = lit & 1u;
          bool val = (assign >> var) & 1u;
          if (val != neg) {
            clause_sat = true;
            break;
          }
        }
        all = clause_sat;
      }
      if (all) return true;
    }
    return false;
  };

  std::vector<std::uint32_t> yes, no;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    (satisfiable(x) ? yes : no).push_back(x);
  }
  return PromiseProblem::make("ksat" + std::to_string(k) + "-n" + std::to_string(n), n,
                              std::move(yes), std::move(no));
}

}  // namespace

PromiseProblem builtin_problem(const std::string& name, int n) {
  if (n < 0 || n > 24) throw std::invalid_argument("builtin_problem: n out of range [0,24]");
  if (name == "parity") return make_parity(n);
  if (name == "const-yes") return make_const_yes(n);
  if (name == "ksat2") return make_ksat(2, n);
  if (name == "ksat3") return make_ksat(3, n);
  throw std::invalid_argument("unknown builtin problem '" + name + "'");
}

bool is_builtin_problem(const std::string& name) {
  return name == "parity" || name == "const-yes" || name == "ksat2" || name == "ksat3";
}

}  // namespace lossylab
