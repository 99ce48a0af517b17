#include "lossylab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "lossylab/lp.hpp"

namespace lossylab {

Dist StochasticReduction::row(std::span<const std::uint32_t> tuple) const {
  if (static_cast<int>(tuple.size()) != m)
    throw std::invalid_argument("reduction: tuple arity mismatch");
  return kernel(tuple);
}

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Dist reduction_mixture(const StochasticReduction& r, std::span<const Dist> slots,
                       std::span<const int> perm) {
  if (static_cast<int>(slots.size()) != r.m || static_cast<int>(perm.size()) != r.m)
    throw std::invalid_argument("reduction_mixture: slot/permutation arity mismatch");
  // Enumerate slot assignments; argument position i receives slot perm[i].
  std::vector<std::pair<std::uint64_t, Rat>> acc;
  std::vector<std::size_t> pick(slots.size(), 0);
  std::vector<std::uint32_t> args(slots.size());
  for (;;) {
    Rat w(1);
    for (std::size_t t = 0; t < slots.size(); ++t) w *= slots[t].pm[pick[t]].second;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& slot = slots[static_cast<std::size_t>(perm[i])];
      args[i] = static_cast<std::uint32_t>(slot.pm[pick[static_cast<std::size_t>(perm[i])]].first);
    }
    Dist row = r.row(args);
    for (const auto& [code, mass] : row.pm) acc.emplace_back(code, w * mass);

    // odometer over slot supports
    std::size_t t = 0;
    while (t < slots.size()) {
      if (++pick[t] < slots[t].pm.size()) break;
      pick[t] = 0;
      ++t;
    }
    if (t == slots.size()) break;
  }
  return Dist::from_masses(std::move(acc));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::uint32_t>> promise_tuples(const PromiseProblem& problem, int m) {
  std::vector<std::uint32_t> promise = problem.promise();
  std::vector<std::vector<std::uint32_t>> tuples;
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  if (promise.empty()) return tuples;
  for (;;) {
    std::vector<std::uint32_t> t(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = promise[pick[i]];
    tuples.push_back(std::move(t));
    std::size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] < promise.size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  return tuples;
}

int f_value_of_tuple(const PromiseProblem& problem, const PermInvariantF& f,
                     std::span<const std::uint32_t> tuple) {
  int weight = 0;
  for (auto x : tuple) {
    Chi c = chi_unchecked(problem, x);
    if (c == Chi::Star) throw std::invalid_argument("tuple leaves the promise");
    weight += (c == Chi::Yes);
  }
  return f.eval_weight(weight);
}

}  // namespace

DistinguisherReport distinguisher_error(const StochasticReduction& r,
                                        const PromiseProblem& problem, const PermInvariantF& f) {
  if (f.m != r.m) throw std::invalid_argument("distinguisher_error: arity mismatch");
  auto tuples = promise_tuples(problem, r.m);
  std::vector<Dist> rows;
  rows.reserve(tuples.size());
  std::vector<int> fv;
  fv.reserve(tuples.size());
  for (const auto& t : tuples) {
    rows.push_back(r.row(t));
    fv.push_back(f_value_of_tuple(problem, f, t));
  }

  DistinguisherReport rep;
  bool found = false;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (fv[i] != 0) continue;
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      if (fv[j] != 1) continue;
      Rat d = statistical_distance(rows[i], rows[j]);
      if (!found || d < rep.min_delta) {
        rep.min_delta = d;
        rep.witness_a = tuples[i];
        rep.witness_b = tuples[j];
        found = true;
      }
    }
  }
  if (!found) {
    rep.vacuous = true;
    rep.mu_hat = Rat(1, 2);
    return rep;
  }
  rep.mu_hat = (Rat(1) - rep.min_delta) / 2;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Chebyshev center of row laws over the probability simplex: minimise t with
// Σ_ω e_{x,ω} ≤ 2t, |D_ω − P_x(ω)| ≤ e_{x,ω}, Σ D = 1, everything ≥ 0.
std::pair<Rat, Dist> chebyshev_center(const std::vector<Dist>& laws) {
  if (laws.empty()) throw std::invalid_argument("chebyshev_center: no laws");
  std::vector<std::uint64_t> outcomes;
  for (const auto& law : laws)
    for (const auto& [code, mass] : law.pm) outcomes.push_back(code);
  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());

  const std::size_t k = outcomes.size();
  const std::size_t nx = laws.size();
  // variables: D_0..D_{k-1}, e_{x,ω} (row-major), t
  const std::size_t var_t = k + nx * k;
  LinearProgram lp;
  lp.num_vars = var_t + 1;
  lp.maximize = false;
  lp.objective.assign(lp.num_vars, Rat(0));
  lp.objective[var_t] = 1;

  auto evar = [&](std::size_t x, std::size_t w) { return k + x * k + w; };

  for (std::size_t x = 0; x < nx; ++x) {
    LpRow sum_row;
    sum_row.coeff.assign(lp.num_vars, Rat(0));
    for (std::size_t w = 0; w < k; ++w) sum_row.coeff[evar(x, w)] = 1;
    sum_row.coeff[var_t] = -2;
    sum_row.rel = Rel::Le;
    sum_row.rhs = 0;
    lp.rows.push_back(std::move(sum_row));

    for (std::size_t w = 0; w < k; ++w) {
      Rat px = laws[x].mass(outcomes[w]);
      LpRow upper;  // D_ω − e ≤ P_x(ω)
      upper.coeff.assign(lp.num_vars, Rat(0));
      upper.coeff[w] = 1;
      upper.coeff[evar(x, w)] = -1;
      upper.rel = Rel::Le;
      upper.rhs = px;
      lp.rows.push_back(std::move(upper));
      LpRow lower;  // −D_ω − e ≤ −P_x(ω)
      lower.coeff.assign(lp.num_vars, Rat(0));
      lower.coeff[w] = -1;
      lower.coeff[evar(x, w)] = -1;
      lower.rel = Rel::Le;
      lower.rhs = -px;
      lp.rows.push_back(std::move(lower));
    }
  }
  LpRow simplex_row;
  simplex_row.coeff.assign(lp.num_vars, Rat(0));
  for (std::size_t w = 0; w < k; ++w) simplex_row.coeff[w] = 1;
  simplex_row.rel = Rel::Eq;
  simplex_row.rhs = 1;
  lp.rows.push_back(std::move(simplex_row));

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("chebyshev LP not optimal");

  std::vector<std::pair<std::uint64_t, Rat>> masses;
  for (std::size_t w = 0; w < k; ++w) masses.emplace_back(outcomes[w], sol.x[w]);
  Dist center = Dist::from_masses(std::move(masses));
  // The LP objective already equals max_x Δ; re-derive exactly for safety.
  Rat dmax(0);
  for (const auto& law : laws) dmax = std::max(dmax, statistical_distance(law, center));
  return {dmax, center};
}

}  // namespace

WcDistReport wc_dist_distance(const StochasticReduction& r, const PromiseProblem& problem,
                              const std::optional<Dist>& center, bool split) {
  WcDistReport rep;
  if (split) {
    if (r.m != 1) throw std::invalid_argument("split mode needs m = 1");
    if (center) throw std::invalid_argument("split mode computes its own centers");
    std::vector<Dist> yes_laws, no_laws;
    for (auto x : problem.yes) yes_laws.push_back(r.row({&x, 1}));
    for (auto x : problem.no) no_laws.push_back(r.row({&x, 1}));
    rep.d = 0;
    if (!yes_laws.empty()) {
      auto [d, c] = chebyshev_center(yes_laws);
      rep.d_yes = d;
      rep.center_yes = std::move(c);
      rep.d = std::max(rep.d, rep.d_yes);
    }
    if (!no_laws.empty()) {
      auto [d, c] = chebyshev_center(no_laws);
      rep.d_no = d;
      rep.center_no = std::move(c);
      rep.d = std::max(rep.d, rep.d_no);
    }
    return rep;
  }

  auto tuples = promise_tuples(problem, r.m);
  if (tuples.empty()) throw std::invalid_argument("wc_dist_distance: empty promise");
  std::vector<Dist> laws;
  laws.reserve(tuples.size());
  for (const auto& t : tuples) laws.push_back(r.row(t));
  if (center) {
    rep.center = *center;
    rep.d = 0;
    for (const auto& law : laws) rep.d = std::max(rep.d, statistical_distance(law, rep.center));
  } else {
    auto [d, c] = chebyshev_center(laws);
    rep.d = d;
    rep.center = std::move(c);
  }
  return rep;
}

// ---------------------------------------------------------------------------

EncodingCheck encoding_check(const RandomizedEncoding& re,
                             const std::function<int(std::uint32_t)>& truth,
                             std::span<const std::uint32_t> instances) {
  if (re.encoder.m != 1) throw std::invalid_argument("encoding_check: encoder must have m = 1");
  EncodingCheck out;
  out.mu = 0;
  out.d = 0;
  for (auto x : instances) {
    Dist law = re.encoder.row({&x, 1});
    int fx = truth(x);
    Rat err(0);
    for (const auto& [code, mass] : law.pm) {
      if (re.decode(code) != fx) err += mass;
    }
    if (err > out.mu) {
      out.mu = err;
      out.argmax_mu = x;
    }
    Rat dist = statistical_distance(fx ? re.sim1 : re.sim0, law);
    if (dist > out.d) {
      out.d = dist;
      out.argmax_d = x;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// All distinct multiset-uniform laws over a ground set with denominator at
// most s_max: weak compositions of s into |ground| parts for s = 1..s_max,
// kept only in lowest terms (gcd of counts and s equal to 1).
std::vector<Dist> suniform_family(std::span<const std::uint32_t> ground, std::uint64_t s_max) {
  std::vector<Dist> out;
  if (ground.empty()) return out;
  std::vector<unsigned long> counts(ground.size(), 0);
  std::function<void(std::size_t, unsigned long, unsigned long)> rec =
      [&](std::size_t idx, unsigned long left, unsigned long s) {
        if (idx + 1 == counts.size()) {
          counts[idx] = left;
          unsigned long g = 0;
          for (auto c : counts) g = std::gcd(g, c);
          if (g == 1) {
            std::vector<std::pair<std::uint64_t, Rat>> masses;
            for (std::size_t i = 0; i < counts.size(); ++i) {
              if (counts[i] == 0) continue;
              Rat mass(counts[i], s);
              mass.canonicalize();
              masses.emplace_back(ground[i], mass);
            }
            out.push_back(Dist::from_masses(std::move(masses)));
          }
          counts[idx] = 0;
          return;
        }
        for (unsigned long c = 0; c <= left; ++c) {
          counts[idx] = c;
          rec(idx + 1, left - c, s);
        }
        counts[idx] = 0;
      };
  for (unsigned long s = 1; s <= s_max; ++s) rec(0, s, s);
  return out;
}

Dist random_suniform(std::span<const std::uint32_t> ground, std::uint64_t s_max,
                     SplitMix64& gen) {
  std::uint64_t s = 1 + gen.next_below(s_max);
  std::vector<std::uint64_t> picks(s);
  for (auto& p : picks) p = ground[gen.next_below(ground.size())];
  return Dist::uniform(std::span<const std::uint64_t>(picks));
}

double joint_information(const StochasticReduction& r, std::span<const Dist> coords) {
  // Left code = dense tuple index, right = outcome code.
  std::vector<std::size_t> pick(coords.size(), 0);
  std::vector<std::uint32_t> args(coords.size());
  std::vector<Joint::Entry> entries;
  std::uint64_t tuple_index = 0;
  for (;;) {
    Rat w(1);
    for (std::size_t t = 0; t < coords.size(); ++t) {
      w *= coords[t].pm[pick[t]].second;
      args[t] = static_cast<std::uint32_t>(coords[t].pm[pick[t]].first);
    }
    Dist row = r.row(args);
    for (const auto& [code, mass] : row.pm) entries.push_back({tuple_index, code, w * mass});
    ++tuple_index;
    std::size_t t = 0;
    while (t < coords.size()) {
      if (++pick[t] < coords[t].pm.size()) break;
      pick[t] = 0;
      ++t;
    }
    if (t == coords.size()) break;
  }
  return Joint::from_entries(std::move(entries)).mutual_information_bits();
}

}  // namespace

MildLossinessReport mild_lossiness_estimate(const StochasticReduction& r,
                                            const PromiseProblem& problem, double gamma,
                                            std::uint64_t budget, std::uint64_t seed,
                                            std::optional<std::uint64_t> s_cap_override) {
  if (gamma <= 0) throw std::invalid_argument("mild_lossiness_estimate: gamma must be positive");
  MildLossinessReport rep;
  double s_req = std::ceil(512.0 * r.m * r.n / (gamma * gamma * gamma));
  rep.s_required = s_req > 1e18 ? static_cast<std::uint64_t>(1e18)
                                : static_cast<std::uint64_t>(s_req);
  std::uint64_t cap = s_cap_override.value_or(problem.promise_size());
  rep.s_effective = std::max<std::uint64_t>(1, std::min(rep.s_required, cap));

  std::vector<Dist> candidates;
  for (auto side : {std::span<const std::uint32_t>(problem.yes),
                    std::span<const std::uint32_t>(problem.no)}) {
    auto fam = suniform_family(side, rep.s_effective);
    candidates.insert(candidates.end(), fam.begin(), fam.end());
  }
  rep.candidates_per_coordinate = candidates.size();
  if (candidates.empty()) return rep;

  double combos = 1;
  for (int i = 0; i < r.m; ++i) combos *= static_cast<double>(candidates.size());
  rep.exhaustive = combos <= static_cast<double>(budget);

  double best = -1;
  std::vector<Dist> best_coords;
  auto consider = [&](const std::vector<Dist>& coords) {
    double info = joint_information(r, coords);
    ++rep.combos_evaluated;
    if (info > best) {
      best = info;
      best_coords = coords;
    }
  };

  if (rep.exhaustive) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(r.m), 0);
    std::vector<Dist> coords(static_cast<std::size_t>(r.m));
    for (;;) {
      for (std::size_t t = 0; t < pick.size(); ++t) coords[t] = candidates[pick[t]];
      consider(coords);
      std::size_t t = 0;
      while (t < pick.size()) {
        if (++pick[t] < candidates.size()) break;
        pick[t] = 0;
        ++t;
      }
      if (t == pick.size()) break;
    }
  } else {
    SplitMix64 gen(seed);
    std::vector<std::span<const std::uint32_t>> sides;
    if (!problem.yes.empty()) sides.push_back(problem.yes);
    if (!problem.no.empty()) sides.push_back(problem.no);
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
      std::vector<Dist> coords;
      coords.reserve(static_cast<std::size_t>(r.m));
      for (int i = 0; i < r.m; ++i)
        coords.push_back(random_suniform(sides[gen.next_below(sides.size())], rep.s_effective, gen));
      consider(coords);
    }
  }

  rep.ell_hat = best < 0 ? 0 : best;
  rep.lambda_hat = rep.ell_hat / r.m;
  rep.witness = std::move(best_coords);
  return rep;
}

// ---------------------------------------------------------------------------

std::uint64_t TuringReduction::pack(std::span<const std::uint32_t> queries, int tag) const {
  if (static_cast<int>(queries.size()) != k) throw std::invalid_argument("pack: k mismatch");
  std::uint64_t base = std::uint64_t{1} << target.n;
  std::uint64_t code = 0;
  for (auto q : queries) {
    if (q >= base) throw std::invalid_argument("pack: query outside target space");
    code = code * base + q;
  }
  return code * static_cast<std::uint64_t>(num_tags) + static_cast<std::uint64_t>(tag);
}

void TuringReduction::unpack(std::uint64_t code, std::vector<std::uint32_t>& queries,
                             int& tag) const {
  std::uint64_t base = std::uint64_t{1} << target.n;
  tag = static_cast<int>(code % static_cast<std::uint64_t>(num_tags));
  code /= static_cast<std::uint64_t>(num_tags);
  queries.assign(static_cast<std::size_t>(k), 0);
  for (int i = k - 1; i >= 0; --i) {
    queries[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % base);
    code /= base;
  }
}

namespace {

Dist query_marginal(const TuringReduction& rt, std::uint32_t x) {
  Dist law = rt.law(x);
  std::vector<std::pair<std::uint64_t, Rat>> masses;
  for (const auto& [code, mass] : law.pm)
    masses.emplace_back(code / static_cast<std::uint64_t>(rt.num_tags), mass);
  return Dist::from_masses(std::move(masses));
}

// Acceptance probability of the reduction-semantics test on R(x)'s output,
// where the target bit comes from the hinted instance.
Rat turing_acceptance(const TuringReduction& rt, const PromiseProblem& problem, std::uint32_t x,
                      int target_bit) {
  Dist law = rt.law(x);
  Rat acc(0);
  std::vector<std::uint32_t> queries;
  std::vector<int> answers;
  int tag = 0;
  for (const auto& [code, mass] : law.pm) {
    rt.unpack(code, queries, tag);
    answers.assign(queries.size(), 0);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      Chi c = chi_unchecked(rt.target, queries[i]);
      answers[i] = (c == Chi::Yes) ? 1 : 0;  // target oracle answer
    }
    if (rt.evaluate(tag, queries, answers) == target_bit) acc += mass;
  }
  (void)problem;
  return acc;
}

}  // namespace

Rat simulated_distinguisher_advantage(const TuringReduction& rt, const PromiseProblem& problem,
                                      std::uint32_t x, std::uint32_t x_prime) {
  Chi cx = chi_unchecked(problem, x);
  if (cx == Chi::Star) throw std::invalid_argument("hinted instance outside promise");
  int bit = (cx == Chi::Yes) ? 1 : 0;
  Rat a = turing_acceptance(rt, problem, x, bit);
  Rat b = turing_acceptance(rt, problem, x_prime, bit);
  return abs(a - b);
}

TuringHintReport turing_hint_information(const TuringReduction& rt, const PromiseProblem& problem,
                                         double gamma, std::uint64_t budget, std::uint64_t seed) {
  TuringHintReport rep;
  std::vector<Dist> marginals;
  auto promise = problem.promise();
  for (auto x : promise) marginals.push_back(query_marginal(rt, x));
  {
    // Same Chebyshev machinery as the Karp case, over query-tuple laws.
    StochasticReduction view;
    view.m = 1;
    view.n = rt.n;
    view.kernel = [&rt](std::span<const std::uint32_t> t) { return query_marginal(rt, t[0]); };
    WcDistReport wc = wc_dist_distance(view, problem, std::nullopt, false);
    rep.d_hat = wc.d;
    rep.center = wc.center;
  }

  // sup over s-uniform X of I((X, Y_1..Y_k); C)
  if (gamma <= 0) throw std::invalid_argument("turing_hint_information: gamma must be positive");
  double s_req = std::ceil(512.0 * rt.n / (gamma * gamma * gamma));
  std::uint64_t s_eff = std::max<std::uint64_t>(
      1, std::min(s_req > 1e18 ? static_cast<std::uint64_t>(1e18)
                               : static_cast<std::uint64_t>(s_req),
                  static_cast<std::uint64_t>(problem.promise_size())));

  std::vector<Dist> candidates;
  for (auto side : {std::span<const std::uint32_t>(problem.yes),
                    std::span<const std::uint32_t>(problem.no)}) {
    auto fam = suniform_family(side, s_eff);
    candidates.insert(candidates.end(), fam.begin(), fam.end());
  }
  rep.exhaustive = candidates.size() <= budget;

  auto info_of = [&](const Dist& x_law) {
    std::vector<Joint::Entry> entries;
    std::uint64_t tags = static_cast<std::uint64_t>(rt.num_tags);
    for (const auto& [x, px] : x_law.pm) {
      Dist law = rt.law(static_cast<std::uint32_t>(x));
      for (const auto& [code, mass] : law.pm) {
        std::uint64_t qtuple = code / tags;
        std::uint64_t tag = code % tags;
        // left = (x, query tuple) packed; right = tag
        entries.push_back({x * (std::uint64_t{1} << (rt.target.n * rt.k)) + qtuple, tag,
                           px * mass});
      }
    }
    return Joint::from_entries(std::move(entries)).mutual_information_bits();
  };

  double best = 0;
  if (rep.exhaustive) {
    for (const auto& cand : candidates) {
      best = std::max(best, info_of(cand));
      ++rep.combos_evaluated;
    }
  } else {
    SplitMix64 gen(seed);
    std::vector<std::span<const std::uint32_t>> sides;
    if (!problem.yes.empty()) sides.push_back(problem.yes);
    if (!problem.no.empty()) sides.push_back(problem.no);
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
      Dist cand = random_suniform(sides[gen.next_below(sides.size())], s_eff, gen);
      best = std::max(best, info_of(cand));
      ++rep.combos_evaluated;
    }
  }
  rep.h_hat = best;
  return rep;
}

StochasticReduction as_stochastic(const TuringReduction& rt, const PromiseProblem& problem) {
  (void)problem;
  StochasticReduction r;
  r.m = 1;
  r.n = rt.n;
  r.runtime_label = rt.runtime_label;
  TuringReduction copy = rt;
  r.kernel = [copy](std::span<const std::uint32_t> t) { return copy.law(t[0]); };
  return r;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

int parity_of(std::uint32_t x) { return __builtin_popcount(x) & 1; }

}  // namespace

StochasticReduction builtin_reduction(const std::string& name, const PromiseProblem& problem,
                                      int m, const Rat& flip) {
  StochasticReduction r;
  r.m = m;
  r.n = problem.n;
  if (name == "parity-or") {
    r.omega = {"0", "1"};
    Rat q = flip;
    if (q < 0 || q >= 1) throw std::invalid_argument("parity-or: flip must be in [0,1)");
    r.kernel = [q](std::span<const std::uint32_t> tuple) {
      int out = 0;
      for (auto x : tuple) out |= parity_of(x);
      if (q == 0) return Dist::point(static_cast<std::uint64_t>(out));
      std::vector<std::pair<std::uint64_t, Rat>> masses{
          {static_cast<std::uint64_t>(out), Rat(1) - q},
          {static_cast<std::uint64_t>(1 - out), q}};
      return Dist::from_masses(std::move(masses));
    };
    return r;
  }
  if (name == "identity") {
    auto tuples = promise_tuples(problem, m);
    std::map<std::vector<std::uint32_t>, std::uint64_t> index;
    for (const auto& t : tuples) {
      index[t] = r.omega.size();
      std::string label;
      for (auto x : t) label += to_hex(x, problem.n);
      r.omega.push_back(label);
    }
    r.kernel = [index](std::span<const std::uint32_t> tuple) {
      std::vector<std::uint32_t> key(tuple.begin(), tuple.end());
      auto it = index.find(key);
      if (it == index.end()) throw std::invalid_argument("identity: tuple outside promise");
      return Dist::point(it->second);
    };
    return r;
  }
  if (name == "constant") {
    r.omega = {"c"};
    r.kernel = [](std::span<const std::uint32_t>) { return Dist::point(0); };
    return r;
  }
  if (name == "xor-encode") {
    if (m != 1 || problem.n != 2) throw std::invalid_argument("xor-encode expects m=1, n=2");
    r.omega = {"00", "01", "10", "11"};
    r.kernel = [](std::span<const std::uint32_t> tuple) {
      std::uint32_t x = tuple[0];
      std::vector<std::uint64_t> outs;
      for (std::uint32_t rbit = 0; rbit < 2; ++rbit) {
        std::uint32_t mask = rbit ? 0b11u : 0b00u;
        outs.push_back(x ^ mask);
      }
      return Dist::uniform(std::span<const std::uint64_t>(outs));
    };
    return r;
  }
  throw std::invalid_argument("unknown builtin reduction '" + name + "'");
}

StochasticReduction dense_reduction(int m, int n, std::vector<std::string> omega,
                                    std::vector<std::pair<std::vector<std::uint32_t>, Dist>> rows,
                                    std::string runtime_label) {
  StochasticReduction r;
  r.m = m;
  r.n = n;
  r.omega = std::move(omega);
  r.runtime_label = std::move(runtime_label);
  std::map<std::vector<std::uint32_t>, Dist> table;
  for (auto& [tuple, law] : rows) {
    if (static_cast<int>(tuple.size()) != m)
      throw std::invalid_argument("dense_reduction: tuple arity mismatch");
    table[tuple] = std::move(law);
  }
  r.kernel = [table](std::span<const std::uint32_t> tuple) {
    std::vector<std::uint32_t> key(tuple.begin(), tuple.end());
    auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument("dense_reduction: missing kernel row");
    return it->second;
  };
  return r;
}

RandomizedEncoding xor_encoding(const PromiseProblem& parity2) {
  RandomizedEncoding re;
  re.encoder = builtin_reduction("xor-encode", parity2, 1, Rat(0));
  re.decode = [](std::uint64_t code) {
    return static_cast<int>((code & 1u) ^ ((code >> 1) & 1u));
  };
  std::vector<std::uint64_t> odd{0b01, 0b10}, even{0b00, 0b11};
  re.sim1 = Dist::uniform(std::span<const std::uint64_t>(odd));
  re.sim0 = Dist::uniform(std::span<const std::uint64_t>(even));
  return re;
}

StochasticReduction with_binary_noise(const StochasticReduction& r, const Rat& q) {
  if (r.omega.size() != 2) throw std::invalid_argument("with_binary_noise: binary alphabet only");
  if (q < 0 || q > Rat(1, 2)) throw std::invalid_argument("noise must be in [0, 1/2]");
  StochasticReduction noisy = r;
  auto base = r.kernel;
  noisy.kernel = [base, q](std::span<const std::uint32_t> tuple) {
    Dist clean = base(tuple);
    std::vector<std::pair<std::uint64_t, Rat>> masses;
    for (const auto& [code, mass] : clean.pm) {
      masses.emplace_back(code, mass * (Rat(1) - q));
      masses.emplace_back(code ^ 1u, mass * q);
    }
    return Dist::from_masses(std::move(masses));
  };
  return noisy;
}

}  // namespace lossylab
