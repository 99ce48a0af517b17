#include "lossylab/disguise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "lossylab/bits.hpp"
#include "lossylab/parallel.hpp"

namespace lossylab {

double delta_of(double ell, int m) {
  if (ell < 0) throw std::invalid_argument("delta_of: ell must be >= 0");
  if (m < 1) throw std::invalid_argument("delta_of: m must be >= 1");
  double a = std::sqrt(ell * std::log(2.0) / (2.0 * m));
  double b = 1.0 - std::exp2(-ell / m - 2.0);
  return std::min(a, b);
}

Rat distributional_stability(const StochasticReduction& r, const Dist& d0, const Dist& d1, int m0,
                             int m1) {
  if (m0 + m1 + 1 != r.m)
    throw std::invalid_argument("distributional_stability: m0 + m1 + 1 must equal the arity");
  if (m0 < 0 || m1 < 0) throw std::invalid_argument("distributional_stability: negative counts");

  auto perms = all_permutations(r.m);
  Rat total(0);
  for (const auto& [y, py] : d0.pm) {
    // slots: m0 copies of D0, the pinned y, m1 copies of D1
    std::vector<Dist> pinned_slots, fresh_slots;
    for (int i = 0; i < m0; ++i) pinned_slots.push_back(d0);
    pinned_slots.push_back(Dist::point(y));
    for (int i = 0; i < m1; ++i) pinned_slots.push_back(d1);
    fresh_slots.assign(static_cast<std::size_t>(m0) + 1, d0);
    for (int i = 0; i < m1; ++i) fresh_slots.push_back(d1);

    Rat per_y(0);
    for (const auto& perm : perms) {
      Dist a = reduction_mixture(r, pinned_slots, perm);
      Dist b = reduction_mixture(r, fresh_slots, perm);
      per_y += statistical_distance(a, b);
    }
    per_y /= static_cast<unsigned long>(perms.size());
    total += py * per_y;
  }
  return total;
}

std::vector<std::vector<std::uint32_t>> multisets_of(std::span<const std::uint32_t> ground,
                                                     int d) {
  std::vector<std::vector<std::uint32_t>> out;
  if (ground.empty() || d <= 0) return out;
  std::vector<std::uint32_t> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(current.size()) == d) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = from; i < ground.size(); ++i) {
      current.push_back(ground[i]);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

Rat disguise_payoff(const StochasticReduction& r, std::span<const std::uint32_t> k_multiset,
                    std::span<const std::uint32_t> t_multiset, std::uint32_t y, bool y_in_s0,
                    int m0, int m1) {
  Dist uk = k_multiset.empty() ? Dist() : Dist::uniform(k_multiset);
  Dist ut = t_multiset.empty() ? Dist() : Dist::uniform(t_multiset);

  // Pinned arrangement: (U_K^{m0}, y, U_T^{m1}). The fresh arrangement gives
  // the extra draw to the side y came from.
  std::vector<Dist> pinned, fresh;
  for (int i = 0; i < m0; ++i) pinned.push_back(uk);
  pinned.push_back(Dist::point(y));
  for (int i = 0; i < m1; ++i) pinned.push_back(ut);
  if (y_in_s0) {
    for (int i = 0; i < m0 + 1; ++i) fresh.push_back(uk);
    for (int i = 0; i < m1; ++i) fresh.push_back(ut);
  } else {
    for (int i = 0; i < m0; ++i) fresh.push_back(uk);
    for (int i = 0; i < m1 + 1; ++i) fresh.push_back(ut);
  }

  auto perms = all_permutations(r.m);
  Rat total(0);
  for (const auto& perm : perms) {
    Dist a = reduction_mixture(r, pinned, perm);
    Dist b = reduction_mixture(r, fresh, perm);
    total += statistical_distance(a, b);
  }
  total /= static_cast<unsigned long>(perms.size());
  return total;
}

DisguiseCollection build_disguising_collection(const StochasticReduction& r,
                                               std::vector<std::uint32_t> s0,
                                               std::vector<std::uint32_t> s1, int m0, int m1,
                                               int d, const Rat& epsilon, double ell,
                                               std::uint64_t seed, int jobs) {
  const int m = m0 + m1 + 1;
  if (m != r.m) throw std::invalid_argument("collection: m0 + m1 + 1 must equal the arity");
  if (d < 1) throw std::invalid_argument("collection: d must be >= 1");
  if (epsilon <= 0) throw std::invalid_argument("collection: epsilon must be positive");

  std::sort(s0.begin(), s0.end());
  std::sort(s1.begin(), s1.end());

  DisguiseCollection coll;
  coll.d = d;
  coll.m = m;
  coll.m0 = m0;
  coll.m1 = m1;
  coll.epsilon = epsilon;
  coll.ell = ell;
  coll.s0 = s0;
  coll.s1 = s1;
  coll.b_no_empty = s0.empty();
  coll.b_yes_empty = s1.empty();
  coll.apriori_bound = delta_of(ell, m) + 2.0 * (m + 1) / (d + 1) +
                       2.0 * mpq_get_d(epsilon.get_mpq_t());

  // K draws are always needed (m0+1 slots in the fresh case); T draws only
  // when m1 > 0 or a YES column exists. An empty side that is still needed
  // degenerates to the matching Algorithm-1 advice-bit path.
  bool need_t = m1 > 0;
  if (s0.empty() || (need_t && s1.empty())) {
    coll.degenerate = true;
    return coll;
  }

  auto k_sets = multisets_of(s0, d);
  std::vector<std::vector<std::uint32_t>> t_sets;
  if (!s1.empty())
    t_sets = multisets_of(s1, d);
  else
    t_sets.push_back({});  // unused draws; keeps the pair space well-formed

  const std::size_t nrows = k_sets.size() * t_sets.size();
  std::vector<std::uint32_t> columns = s0;
  columns.insert(columns.end(), s1.begin(), s1.end());
  const std::size_t ncols = columns.size();

  PayoffMatrix payoff = PayoffMatrix::zeros(nrows, ncols);
  parallel_for(nrows * ncols, jobs, [&](std::size_t idx) {
    std::size_t row = idx / ncols, col = idx % ncols;
    const auto& kset = k_sets[row / t_sets.size()];
    const auto& tset = t_sets[row % t_sets.size()];
    bool in_s0 = col < s0.size();
    payoff.at(row, col) = disguise_payoff(r, kset, tset, columns[col], in_s0, m0, m1);
  });

  GameSolution game = game_value(payoff);
  coll.game_value = game.value;

  // Lipton–Young sizes: the hypothesis counts Player 2's pure strategies
  // (|S0 ∪ S1| here); the ambient 2^n count is recorded alongside.
  double eps_d = mpq_get_d(epsilon.get_mpq_t());
  coll.s_required_ground = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(std::log(static_cast<double>(ncols)) / (2.0 * eps_d * eps_d))));
  coll.s_required_ambient = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(r.n * std::log(2.0) / (2.0 * eps_d * eps_d))));

  SparsifyOptions opt;
  opt.seed = seed;
  opt.s_override = static_cast<std::size_t>(coll.s_required_ground);
  SparsifyResult sparse = ly_sparsify(payoff, 1, epsilon, opt, &game);
  coll.sparsify_certified = sparse.certified;
  coll.sparsify_exhaustive = sparse.via_exhaustive;
  if (!sparse.certified)
    throw std::runtime_error("disguising collection: sparsification certification failed");

  coll.s = static_cast<int>(sparse.s);
  for (std::size_t row : *sparse.strategy.multiset) {
    coll.pairs.emplace_back(k_sets[row / t_sets.size()], t_sets[row % t_sets.size()]);
  }

  // Exact achieved value: max over columns of the average payoff under the
  // uniform choice of a ∈ [s].
  Rat achieved(0);
  for (std::size_t col = 0; col < ncols; ++col) {
    Rat avg(0);
    for (std::size_t row : *sparse.strategy.multiset) avg += payoff.at(row, col);
    avg /= static_cast<unsigned long>(sparse.s);
    achieved = std::max(achieved, avg);
  }
  coll.achieved = achieved;
  return coll;
}

}  // namespace lossylab
