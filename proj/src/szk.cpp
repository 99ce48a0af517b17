#include "lossylab/szk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lossylab {

AdviceDraw draw_advice(const DisguiseCollection& coll, SplitMix64& gen) {
  if (coll.pairs.empty()) throw std::invalid_argument("draw_advice: empty collection");
  AdviceDraw adv;
  adv.a = gen.next_below(coll.pairs.size());
  auto perms = all_permutations(coll.m);
  adv.perm = perms[gen.next_below(perms.size())];
  return adv;
}

namespace {

// lcm of the mass denominators of every kernel row both circuits of a pair
// can reach under their fixed advice.
std::uint64_t shared_row_lcm(const StochasticReduction& r,
                             const std::vector<std::vector<Dist>>& slot_sets,
                             std::span<const int> perm) {
  mpz_class l(1);
  std::vector<std::uint32_t> args(static_cast<std::size_t>(r.m));
  for (const auto& slots : slot_sets) {
    std::vector<std::size_t> pick(slots.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& slot = slots[static_cast<std::size_t>(perm[i])];
        args[i] =
            static_cast<std::uint32_t>(slot.pm[pick[static_cast<std::size_t>(perm[i])]].first);
      }
      Dist row = r.row(args);
      for (const auto& [code, mass] : row.pm) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mass.get_den().get_mpz_t());
      std::size_t t = 0;
      while (t < slots.size()) {
        if (++pick[t] < slots[t].pm.size()) break;
        pick[t] = 0;
        ++t;
      }
      if (t == slots.size()) break;
    }
  }
  if (!l.fits_ulong_p()) throw std::overflow_error("circuit randomness domain too large");
  return l.get_ui();
}

std::vector<Dist> circuit_slots(const CircuitDescriptor& c) {
  const int m = static_cast<int>(c.perm.size());
  const int p = c.p;
  Dist uk = Dist::uniform(std::span<const std::uint32_t>(c.k_multiset));
  Dist ut;
  if (!c.t_multiset.empty()) ut = Dist::uniform(std::span<const std::uint32_t>(c.t_multiset));
  std::vector<Dist> slots;
  if (c.kind == CircuitDescriptor::Kind::Baseline) {
    for (int t = 0; t <= m - p; ++t) slots.push_back(uk);   // m−p+1 K draws
    for (int t = 0; t < p - 1; ++t) slots.push_back(ut);    // p−1 T draws
  } else {
    for (int t = 0; t < m - p; ++t) slots.push_back(uk);
    slots.push_back(Dist::point(c.pinned_y));
    for (int t = 0; t < p - 1; ++t) slots.push_back(ut);
  }
  return slots;
}

std::uint64_t outcome_at(const Dist& law, std::uint64_t j, std::uint64_t lcm) {
  // j in [0, lcm); outcome t owns the block [cum_{t-1}·lcm, cum_t·lcm).
  Rat cum(0);
  Rat target(j, 1);
  target /= Rat(static_cast<unsigned long>(lcm));
  for (const auto& [code, mass] : law.pm) {
    cum += mass;
    if (target < cum) return code;
  }
  return law.pm.back().first;
}

}  // namespace

std::uint64_t CircuitDescriptor::randomness_size() const {
  if (kind == Kind::FixedLaw) return row_lcm;
  std::uint64_t n = row_lcm;
  const std::uint64_t d = k_multiset.size();
  for (std::size_t t = 0; t < perm.size(); ++t) {
    if (n > ~std::uint64_t{0} / d) throw std::overflow_error("randomness domain too large");
    n *= d;
  }
  return n;
}

int CircuitDescriptor::kappa() const {
  std::uint64_t n = randomness_size();
  int bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return std::max(bits, 1);
}

std::uint64_t CircuitDescriptor::eval(std::uint64_t r) const {
  if (r >= randomness_size()) throw std::invalid_argument("circuit eval: randomness out of range");
  if (kind == Kind::FixedLaw) return outcome_at(fixed_law, r, row_lcm);

  const std::uint64_t d = k_multiset.size();
  const int m = static_cast<int>(perm.size());
  const int p_ = p;
  std::vector<std::uint32_t> slot_values(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    std::uint64_t idx = r % d;
    r /= d;
    if (kind == Kind::Baseline) {
      slot_values[static_cast<std::size_t>(t)] =
          (t <= m - p_) ? k_multiset[idx] : t_multiset[idx];
    } else {
      if (t < m - p_) slot_values[static_cast<std::size_t>(t)] = k_multiset[idx];
      else if (t == m - p_) slot_values[static_cast<std::size_t>(t)] = pinned_y;  // index unused
      else slot_values[static_cast<std::size_t>(t)] = t_multiset[idx];
    }
  }
  std::vector<std::uint32_t> args(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    args[static_cast<std::size_t>(i)] = slot_values[static_cast<std::size_t>(perm[i])];
  Dist row = reduction->row(args);
  return outcome_at(row, r, row_lcm);
}

Dist circuit_output_distribution(const CircuitDescriptor& c) {
  if (c.kind == CircuitDescriptor::Kind::FixedLaw) return c.fixed_law;
  return reduction_mixture(*c.reduction, circuit_slots(c), c.perm);
}

CircuitPair build_instance_circuits(const StochasticReduction& r, const PromiseProblem& problem,
                                    const PermInvariantF& f, const DisguiseCollection& coll,
                                    const AdviceDraw& advice, std::uint32_t y) {
  if (!problem.in_promise(y)) throw std::invalid_argument("instance outside the promise");

  CircuitPair pair;
  pair.b_yes_empty = coll.b_yes_empty;
  pair.b_no_empty = coll.b_no_empty;

  // Lines 1–2: emptiness advice bits short-circuit the construction with
  // canonical fixed pairs (near at Δ = 1/4, far at Δ = 1).
  if (coll.b_no_empty) {
    pair.bypass = true;
    pair.c0.kind = CircuitDescriptor::Kind::FixedLaw;
    pair.c0.fixed_law = Dist::from_masses({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
    pair.c0.row_lcm = 2;
    pair.c1.kind = CircuitDescriptor::Kind::FixedLaw;
    pair.c1.fixed_law = Dist::from_masses({{0, Rat(1, 4)}, {1, Rat(3, 4)}});
    pair.c1.row_lcm = 4;
    return pair;
  }
  if (coll.b_yes_empty) {
    pair.bypass = true;
    pair.c0.kind = CircuitDescriptor::Kind::FixedLaw;
    pair.c0.fixed_law = Dist::point(0);
    pair.c0.row_lcm = 1;
    pair.c1.kind = CircuitDescriptor::Kind::FixedLaw;
    pair.c1.fixed_law = Dist::point(1);
    pair.c1.row_lcm = 1;
    return pair;
  }

  const int p = p_of_f(f);
  if (p - 1 != coll.m1 || r.m - p != coll.m0)
    throw std::invalid_argument("collection was built for a different (m0, m1) split");
  if (advice.a >= coll.pairs.size()) throw std::invalid_argument("advice index out of range");

  const auto& [k_set, t_set] = coll.pairs[advice.a];
  auto fill = [&](CircuitDescriptor& c, CircuitDescriptor::Kind kind) {
    c.kind = kind;
    c.reduction = &r;
    c.k_multiset = k_set;
    c.t_multiset = t_set;
    c.perm = advice.perm;
    c.p = p;
  };
  fill(pair.c0, CircuitDescriptor::Kind::Baseline);
  fill(pair.c1, CircuitDescriptor::Kind::Pinned);
  pair.c1.pinned_y = y;

  std::uint64_t lcm = shared_row_lcm(
      r, {circuit_slots(pair.c0), circuit_slots(pair.c1)}, advice.perm);
  pair.c0.row_lcm = lcm;
  pair.c1.row_lcm = lcm;
  return pair;
}

SzkGapReport szk_gap_report(const StochasticReduction& r, const PromiseProblem& problem,
                            const PermInvariantF& f, const DisguiseCollection& coll, double gamma,
                            double mu_claim, double ell_claim, std::uint64_t seed) {
  SzkGapReport rep;
  rep.yes_bound = 1.0 - 2.0 * mu_claim;
  rep.no_bound = delta_of(ell_claim, coll.m) + gamma;
  double denom = delta_of(ell_claim, coll.m) + gamma;
  rep.theta_szk = denom > 0 ? rep.yes_bound * rep.yes_bound / denom
                            : std::numeric_limits<double>::infinity();

  SplitMix64 gen(seed);
  rep.fixed_advice = draw_advice(coll, gen);

  auto perms = all_permutations(coll.m);
  // Baseline laws only depend on the advice; memoise per (a, perm).
  std::vector<std::vector<Dist>> baseline(coll.pairs.size(), std::vector<Dist>(perms.size()));
  for (std::size_t a = 0; a < coll.pairs.size(); ++a) {
    for (std::size_t pi = 0; pi < perms.size(); ++pi) {
      AdviceDraw adv{a, perms[pi]};
      CircuitPair cp = build_instance_circuits(r, problem, f, coll, adv,
                                               problem.promise().front());
      baseline[a][pi] = circuit_output_distribution(cp.c0);
    }
  }

  const unsigned long total = static_cast<unsigned long>(coll.pairs.size() * perms.size());
  for (auto y : problem.promise()) {
    Rat expectation(0);
    Rat fixed_gap(0);
    for (std::size_t a = 0; a < coll.pairs.size(); ++a) {
      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        AdviceDraw adv{a, perms[pi]};
        CircuitPair cp = build_instance_circuits(r, problem, f, coll, adv, y);
        Rat gap = statistical_distance(baseline[a][pi], circuit_output_distribution(cp.c1));
        expectation += gap;
        if (a == rep.fixed_advice.a && perms[pi] == rep.fixed_advice.perm) fixed_gap = gap;
      }
    }
    expectation /= total;

    SzkGapReport::PerInstance inst;
    inst.y = y;
    inst.chi = chi_unchecked(problem, y);
    inst.expected_gap = expectation;
    inst.fixed_advice_gap = fixed_gap;
    rep.instances.push_back(inst);

    if (inst.chi == Chi::Yes) {
      if (!rep.has_yes || expectation < rep.yes_gap_min) rep.yes_gap_min = expectation;
      rep.has_yes = true;
    } else {
      if (!rep.has_no || expectation > rep.no_gap_max) rep.no_gap_max = expectation;
      rep.has_no = true;
    }
  }

  if (rep.has_yes)
    rep.yes_gap_violated = mpq_get_d(rep.yes_gap_min.get_mpq_t()) < rep.yes_bound - 1e-12;
  if (rep.has_no)
    rep.no_gap_violated = mpq_get_d(rep.no_gap_max.get_mpq_t()) > rep.no_bound + 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Polarization

PolarizeResult polarize(const Dist& c0, const Dist& c1, double alpha, double beta, int k,
                        std::uint64_t exact_alphabet_cap) {
  if (!(alpha >= 0 && beta <= 1 && alpha < beta))
    throw std::invalid_argument("polarize: need 0 <= alpha < beta <= 1");
  if (!(beta * beta > alpha))
    throw std::domain_error("polarize: polarization requires beta^2 > alpha");
  if (k < 1) throw std::invalid_argument("polarize: k must be >= 1");

  const double target_low = std::exp2(-k);
  const double target_high = 1.0 - target_low;

  // Greedy two-stage schedule: XOR j drops the near branch to α^j, the
  // product count t then lifts the far branch to 1 − 2e^{−tβ^{2j}/2}. Both
  // final figures are re-certified from the closed forms before accepting j.
  PolarizeResult res;
  long long j_pick = -1, t_pick = -1;
  for (long long j = 1; j <= 256; ++j) {
    double beta_j = std::pow(beta, 2.0 * j);
    if (beta_j <= 0) break;
    long long t = static_cast<long long>(std::ceil(2.0 * (k + 1) * std::log(2.0) / beta_j)) + 1;
    double yes_upper = static_cast<double>(t) * std::pow(alpha, static_cast<double>(j));
    double no_lower = 1.0 - 2.0 * std::exp(-static_cast<double>(t) * beta_j / 2.0);
    if (yes_upper <= target_low && no_lower >= target_high) {
      j_pick = j;
      t_pick = t;
      res.yes_upper = yes_upper;
      res.no_lower = no_lower;
      break;
    }
  }
  if (j_pick < 0) throw std::runtime_error("polarize: no certified schedule found");
  res.schedule = {{'x', j_pick}, {'p', t_pick}};
  res.meets_target = true;

  // Certified interval for the supplied pair itself.
  res.input_delta = statistical_distance(c0, c1);
  double lo = mpq_get_d(res.input_delta.get_mpq_t());
  double hi = lo;
  // xor: exact power; product: Δ ∈ [max(Δ, 1−2e^{−tΔ²/2}), min(1, tΔ)]
  lo = std::pow(lo, static_cast<double>(j_pick));
  hi = std::pow(hi, static_cast<double>(j_pick));
  double prod_lo = std::max(lo, 1.0 - 2.0 * std::exp(-static_cast<double>(t_pick) * lo * lo / 2.0));
  double prod_hi = std::min(1.0, static_cast<double>(t_pick) * hi);
  res.supplied_lower = prod_lo;
  res.supplied_upper = prod_hi;

  // Exact output laws only when the packed alphabet stays enumerable.
  std::size_t u = TupleCodec::for_pair(c0, c1).alphabet.size();
  double out_bits = static_cast<double>(j_pick) * static_cast<double>(t_pick) *
                    std::log2(static_cast<double>(u));
  if (out_bits <= std::log2(static_cast<double>(exact_alphabet_cap))) {
    auto [x0, x1] = xor_step(c0, c1, static_cast<int>(j_pick));
    res.exact_laws = product_step(x0, x1, static_cast<int>(t_pick));
  }
  return res;
}

}  // namespace lossylab
