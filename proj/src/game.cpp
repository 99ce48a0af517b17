#include "lossylab/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lossylab/lp.hpp"

namespace lossylab {

PayoffMatrix PayoffMatrix::zeros(std::size_t rows, std::size_t cols) {
  PayoffMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.entries.assign(rows * cols, Rat(0));
  return m;
}

Rat PayoffMatrix::max_entry() const {
  Rat best = entries.at(0);
  for (const auto& e : entries) best = std::max(best, e);
  return best;
}

Rat PayoffMatrix::min_entry() const {
  Rat best = entries.at(0);
  for (const auto& e : entries) best = std::min(best, e);
  return best;
}

Rat secured_payoff(const PayoffMatrix& m, const MixedStrategy& strat) {
  if (strat.player == 1) {
    if (strat.probs.size() != m.rows) throw std::invalid_argument("strategy size mismatch");
    Rat worst;
    for (std::size_t j = 0; j < m.cols; ++j) {
      Rat e(0);
      for (std::size_t i = 0; i < m.rows; ++i) e += strat.probs[i] * m.at(i, j);
      if (j == 0 || e > worst) worst = e;
    }
    return worst;  // max over opponent columns
  }
  if (strat.probs.size() != m.cols) throw std::invalid_argument("strategy size mismatch");
  Rat worst;
  for (std::size_t i = 0; i < m.rows; ++i) {
    Rat e(0);
    for (std::size_t j = 0; j < m.cols; ++j) e += strat.probs[j] * m.at(i, j);
    if (i == 0 || e < worst) worst = e;
  }
  return worst;  // min over opponent rows
}

GameSolution game_value(const PayoffMatrix& m) {
  if (m.rows == 0 || m.cols == 0) throw std::invalid_argument("game_value: empty matrix");

  // Shift entries to be >= 1 so the value is positive and the classic
  // reciprocal form applies: with u = P/ω, min_P max_j becomes
  // max Σu s.t. M'ᵀu ≤ 1. The dual multipliers are Player 2's strategy.
  Rat shift = Rat(1) - m.min_entry();
  LinearProgram lp;
  lp.num_vars = m.rows;
  lp.maximize = true;
  lp.objective.assign(m.rows, Rat(1));
  lp.rows.reserve(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) {
    LpRow row;
    row.coeff.resize(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) row.coeff[i] = m.at(i, j) + shift;
    row.rel = Rel::Le;
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("game LP not optimal");
  if (sol.objective <= 0) throw std::logic_error("game LP returned nonpositive objective");

  Rat dual_total(0);
  for (const auto& y : sol.row_duals) dual_total += y;
  if (dual_total != sol.objective)
    throw std::logic_error("game LP duality gap");  // primal must equal dual exactly

  GameSolution out;
  out.primal_objective = sol.objective;
  out.dual_objective = dual_total;
  out.value = Rat(1) / sol.objective - shift;

  out.p1.player = 1;
  out.p1.probs.resize(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) out.p1.probs[i] = sol.x[i] / sol.objective;
  out.p2.player = 2;
  out.p2.probs.resize(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) out.p2.probs[j] = sol.row_duals[j] / dual_total;

  if (secured_payoff(m, out.p1) != out.value || secured_payoff(m, out.p2) != out.value)
    throw std::logic_error("game strategies fail the exact minimax check");
  return out;
}

namespace {

std::size_t opponent_count(const PayoffMatrix& m, int player) {
  return player == 1 ? m.cols : m.rows;
}

std::size_t own_count(const PayoffMatrix& m, int player) {
  return player == 1 ? m.rows : m.cols;
}

// Exact secured payoff of the uniform strategy over a multiset of indices.
Rat multiset_payoff(const PayoffMatrix& m, int player, std::span<const std::size_t> picks) {
  Rat worst;
  std::size_t opp = opponent_count(m, player);
  for (std::size_t o = 0; o < opp; ++o) {
    Rat sum(0);
    for (std::size_t i : picks) sum += (player == 1) ? m.at(i, o) : m.at(o, i);
    sum /= static_cast<unsigned long>(picks.size());
    if (o == 0)
      worst = sum;
    else if (player == 1 ? (sum > worst) : (sum < worst))
      worst = sum;
  }
  return worst;
}

bool meets(int player, const Rat& secured, const Rat& allowed) {
  return player == 1 ? secured <= allowed : secured >= allowed;
}

std::size_t sample_index(const std::vector<Rat>& probs, SplitMix64& gen) {
  std::uint64_t u = gen.next();
  mpz_class num(0);
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  Rat threshold(num);
  threshold /= Rat(mpz_class(1) << 64);
  Rat cum(0);
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0) continue;
    cum += probs[i];
    last = i;
    if (threshold < cum) return i;
  }
  return last;
}

// C(k+s-1, s) without overflow; anything above cap saturates.
std::uint64_t multiset_space(std::size_t k, std::size_t s, std::uint64_t cap) {
  unsigned __int128 count = 1;
  for (std::size_t i = 1; i <= s; ++i) {
    count = count * (k + i - 1) / i;  // exact at each step for binomials
    if (count > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(count);
}

// Depth-first enumeration of nondecreasing index multisets with incremental
// opponent sums; returns true when a certified multiset was found.
bool exhaustive_search(const PayoffMatrix& m, int player, std::span<const std::size_t> pool,
                       std::size_t s, const Rat& allowed, std::vector<std::size_t>& out) {
  std::size_t opp = opponent_count(m, player);
  std::vector<Rat> sums(opp, Rat(0));
  std::vector<std::size_t> picks;
  picks.reserve(s);

  auto payoff_of = [&](std::size_t own, std::size_t o) -> const Rat& {
    return player == 1 ? m.at(own, o) : m.at(o, own);
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (picks.size() == s) {
      Rat worst;
      for (std::size_t o = 0; o < opp; ++o) {
        Rat avg = sums[o] / static_cast<unsigned long>(s);
        if (o == 0)
          worst = avg;
        else if (player == 1 ? (avg > worst) : (avg < worst))
          worst = avg;
      }
      if (meets(player, worst, allowed)) {
        out = picks;
        return true;
      }
      return false;
    }
    for (std::size_t idx = from; idx < pool.size(); ++idx) {
      picks.push_back(pool[idx]);
      for (std::size_t o = 0; o < opp; ++o) sums[o] += payoff_of(pool[idx], o);
      if (rec(idx)) return true;
      for (std::size_t o = 0; o < opp; ++o) sums[o] -= payoff_of(pool[idx], o);
      picks.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

SparsifyResult ly_sparsify(const PayoffMatrix& m, int player, const Rat& eps,
                           const SparsifyOptions& opt, const GameSolution* presolved) {
  if (player != 1 && player != 2) throw std::invalid_argument("player must be 1 or 2");
  if (eps <= 0 || eps > 1) throw std::invalid_argument("epsilon must lie in (0,1]");

  GameSolution local;
  if (!presolved) {
    local = game_value(m);
    presolved = &local;
  }
  const MixedStrategy& optimal = (player == 1) ? presolved->p1 : presolved->p2;

  std::size_t s;
  if (opt.s_override) {
    s = *opt.s_override;
  } else {
    double s_min = std::log(static_cast<double>(opponent_count(m, player))) /
                   (2.0 * mpq_get_d(eps.get_mpq_t()) * mpq_get_d(eps.get_mpq_t()));
    s = static_cast<std::size_t>(std::ceil(s_min));
    if (s < 1) s = 1;
  }

  Rat range = m.max_entry() - m.min_entry();
  Rat allowed = (player == 1) ? presolved->value + eps * range : presolved->value - eps * range;

  SparsifyResult res;
  res.s = s;
  res.allowed = allowed;
  res.strategy.player = player;

  auto finish = [&](std::vector<std::size_t> picks, bool exhaustive, int retries) {
    std::sort(picks.begin(), picks.end());
    res.secured = multiset_payoff(m, player, picks);
    res.certified = meets(player, res.secured, allowed);
    res.via_exhaustive = exhaustive;
    res.retries_used = retries;
    std::vector<Rat> probs(own_count(m, player), Rat(0));
    for (std::size_t i : picks) probs[i] += Rat(1, static_cast<unsigned long>(s));
    for (auto& p : probs) p.canonicalize();
    res.strategy.probs = std::move(probs);
    res.strategy.multiset = std::move(picks);
  };

  // Sampling path: i.i.d. draws from the optimal mixed strategy, re-verified
  // exactly; retry on failure.
  SplitMix64 gen(opt.seed);
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    std::vector<std::size_t> picks(s);
    for (auto& p : picks) p = sample_index(optimal.probs, gen);
    if (meets(player, multiset_payoff(m, player, picks), allowed)) {
      finish(std::move(picks), false, attempt + 1);
      return res;
    }
  }

  // Exhaustive fallback: first over the optimal support, then over all pure
  // strategies, whichever fits the cap.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < optimal.probs.size(); ++i)
    if (optimal.probs[i] > 0) support.push_back(i);
  std::vector<std::size_t> everything(own_count(m, player));
  for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;

  for (const auto& pool : {support, everything}) {
    if (multiset_space(pool.size(), s, opt.exhaustive_cap) > opt.exhaustive_cap) continue;
    std::vector<std::size_t> picks;
    if (exhaustive_search(m, player, pool, s, allowed, picks)) {
      finish(std::move(picks), true, opt.max_retries);
      return res;
    }
  }

  // Certification failure: return the last-resort evidence, flagged.
  std::vector<std::size_t> picks(s);
  for (auto& p : picks) p = sample_index(optimal.probs, gen);
  finish(std::move(picks), false, opt.max_retries);
  res.certified = false;
  return res;
}

}  // namespace lossylab
