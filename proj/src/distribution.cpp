#include "lossylab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace lossylab {

namespace {

const Rat kZero(0);
const Rat kOne(1);

void check_total(const Rat& total, const char* what) {
  if (total != kOne) throw std::invalid_argument(std::string(what) + ": masses must sum to 1");
}

double log2_rat(const Rat& r) {
  // Exact up to the final double conversion: split into mantissa·2^e.
  signed long int exp_num, exp_den;
  double num = mpz_get_d_2exp(&exp_num, r.get_num().get_mpz_t());
  double den = mpz_get_d_2exp(&exp_den, r.get_den().get_mpz_t());
  return std::log2(num) - std::log2(den) + static_cast<double>(exp_num - exp_den);
}

}  // namespace

Dist Dist::point(std::uint64_t x) {
  Dist d;
  d.pm.emplace_back(x, kOne);
  return d;
}

Dist Dist::uniform(std::span<const std::uint64_t> multiset) {
  if (multiset.empty()) throw std::invalid_argument("uniform: empty multiset");
  std::map<std::uint64_t, unsigned long> counts;
  for (auto x : multiset) counts[x]++;
  Dist d;
  for (auto& [x, k] : counts) {
    Rat mass(k, static_cast<unsigned long>(multiset.size()));
    mass.canonicalize();
    d.pm.emplace_back(x, mass);
  }
  return d;
}

Dist Dist::uniform(std::span<const std::uint32_t> multiset) {
  std::vector<std::uint64_t> wide(multiset.begin(), multiset.end());
  return uniform(std::span<const std::uint64_t>(wide));
}

Dist Dist::from_masses(std::vector<std::pair<std::uint64_t, Rat>> entries) {
  std::map<std::uint64_t, Rat> acc;
  Rat total = kZero;
  for (auto& [x, m] : entries) {
    if (m < kZero) throw std::invalid_argument("from_masses: negative mass");
    if (m == kZero) continue;
    acc[x] += m;
    total += m;
  }
  check_total(total, "from_masses");
  Dist d;
  d.pm.assign(acc.begin(), acc.end());
  return d;
}

Rat Dist::mass(std::uint64_t x) const {
  auto it = std::lower_bound(pm.begin(), pm.end(), x,
                             [](const auto& e, std::uint64_t v) { return e.first < v; });
  if (it != pm.end() && it->first == x) return it->second;
  return kZero;
}

Rat statistical_distance(const Dist& p, const Dist& q) {
  Rat sum = kZero;
  std::size_t i = 0, j = 0;
  while (i < p.pm.size() || j < q.pm.size()) {
    if (j == q.pm.size() || (i < p.pm.size() && p.pm[i].first < q.pm[j].first)) {
      sum += p.pm[i].second;
      ++i;
    } else if (i == p.pm.size() || q.pm[j].first < p.pm[i].first) {
      sum += q.pm[j].second;
      ++j;
    } else {
      sum += abs(p.pm[i].second - q.pm[j].second);
      ++i;
      ++j;
    }
  }
  sum /= 2;
  return sum;
}

double kl_divergence_bits(const Dist& p, const Dist& q) {
  double sum = 0.0;
  for (const auto& [x, px] : p.pm) {
    Rat qx = q.mass(x);
    if (qx == kZero) return std::numeric_limits<double>::infinity();
    Rat ratio = px / qx;
    sum += mpq_get_d(px.get_mpq_t()) * log2_rat(ratio);
  }
  return sum;
}

double entropy_bits(const Dist& p) {
  double sum = 0.0;
  for (const auto& [x, px] : p.pm) {
    sum -= mpq_get_d(px.get_mpq_t()) * log2_rat(px);
  }
  return sum;
}

double reverse_pinsker_bound(const Dist& p, const Dist& q) {
  for (const auto& [x, px] : p.pm) {
    if (q.mass(x) == kZero)
      throw std::domain_error("reverse_pinsker_bound: reference misses an outcome of P");
  }
  Rat alpha = q.pm.front().second;
  for (const auto& [x, qx] : q.pm) alpha = std::min(alpha, qx);
  if (alpha == kZero) throw std::domain_error("reverse_pinsker_bound: zero reference mass");
  Rat delta = statistical_distance(p, q);
  Rat arg = kOne + 2 * delta * delta / alpha;
  return log2_rat(arg);
}

std::uint64_t sample(const Dist& p, SplitMix64& gen) {
  // u/2^64 is compared against exact cumulative masses: pick the first
  // outcome whose cumulative mass exceeds the uniform draw.
  std::uint64_t u = gen.next();
  mpz_class num(0);
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  Rat threshold(num);
  mpz_class two64 = mpz_class(1) << 64;
  threshold /= Rat(two64);
  Rat cum(0);
  for (const auto& [x, m] : p.pm) {
    cum += m;
    if (threshold < cum) return x;
  }
  return p.pm.back().first;
}

Dist mix(std::span<const std::pair<Rat, const Dist*>> parts) {
  std::map<std::uint64_t, Rat> acc;
  Rat total = kZero;
  for (const auto& [w, dist] : parts) {
    if (w < kZero) throw std::invalid_argument("mix: negative weight");
    total += w;
    if (w == kZero) continue;
    for (const auto& [x, m] : dist->pm) acc[x] += w * m;
  }
  check_total(total, "mix");
  Dist d;
  for (auto& [x, m] : acc) {
    if (m != kZero) d.pm.emplace_back(x, m);
  }
  return d;
}

Joint Joint::from_entries(std::vector<Entry> entries) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rat> acc;
  Rat total = kZero;
  for (auto& e : entries) {
    if (e.mass < kZero) throw std::invalid_argument("joint: negative mass");
    if (e.mass == kZero) continue;
    acc[{e.left, e.right}] += e.mass;
    total += e.mass;
  }
  check_total(total, "joint");
  Joint j;
  for (auto& [k, m] : acc) j.pm.push_back({k.first, k.second, m});
  return j;
}

Dist Joint::left_marginal() const {
  std::map<std::uint64_t, Rat> acc;
  for (const auto& e : pm) acc[e.left] += e.mass;
  Dist d;
  for (auto& [x, m] : acc) d.pm.emplace_back(x, m);
  return d;
}

Dist Joint::right_marginal() const {
  std::map<std::uint64_t, Rat> acc;
  for (const auto& e : pm) acc[e.right] += e.mass;
  Dist d;
  for (auto& [x, m] : acc) d.pm.emplace_back(x, m);
  return d;
}

double Joint::mutual_information_bits() const {
  Dist px = left_marginal();
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rat>>> by_right;
  std::map<std::uint64_t, Rat> py;
  for (const auto& e : pm) {
    by_right[e.right].emplace_back(e.left, e.mass);
    py[e.right] += e.mass;
  }
  double total = 0.0;
  for (auto& [y, rows] : by_right) {
    const Rat& wy = py[y];
    Dist cond;
    for (auto& [x, m] : rows) cond.pm.emplace_back(x, m / wy);
    std::sort(cond.pm.begin(), cond.pm.end());
    total += mpq_get_d(wy.get_mpq_t()) * kl_divergence_bits(cond, px);
  }
  return total;
}

double Joint::mutual_information_via_entropies() const {
  Dist joint_as_dist;  // entropy only needs the multiset of masses
  joint_as_dist.pm.reserve(pm.size());
  std::uint64_t code = 0;
  for (const auto& e : pm) joint_as_dist.pm.emplace_back(code++, e.mass);
  return entropy_bits(left_marginal()) + entropy_bits(right_marginal()) -
         entropy_bits(joint_as_dist);
}

TupleCodec TupleCodec::for_pair(const Dist& a, const Dist& b) {
  TupleCodec codec;
  for (const auto& [x, m] : a.pm) codec.alphabet.push_back(x);
  for (const auto& [x, m] : b.pm) codec.alphabet.push_back(x);
  std::sort(codec.alphabet.begin(), codec.alphabet.end());
  codec.alphabet.erase(std::unique(codec.alphabet.begin(), codec.alphabet.end()),
                       codec.alphabet.end());
  return codec;
}

std::uint64_t TupleCodec::index_of(std::uint64_t code) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), code);
  if (it == alphabet.end() || *it != code)
    throw std::invalid_argument("tuple codec: unknown outcome code");
  return static_cast<std::uint64_t>(it - alphabet.begin());
}

std::uint64_t TupleCodec::pack(std::span<const std::uint64_t> codes) const {
  const std::uint64_t radix = alphabet.size();
  std::uint64_t packed = 0;
  for (auto c : codes) {
    std::uint64_t idx = index_of(c);
    if (packed > (~std::uint64_t{0} - idx) / radix)
      throw std::overflow_error("tuple codec: packed code overflows 64 bits");
    packed = packed * radix + idx;
  }
  return packed;
}

Dist power_law(const Dist& x, int j, const TupleCodec& codec) {
  if (j < 1) throw std::invalid_argument("power_law: j must be >= 1");
  std::vector<std::pair<std::uint64_t, Rat>> acc{{0, kOne}};  // packed prefix -> mass
  const std::uint64_t radix = codec.alphabet.size();
  for (int step = 0; step < j; ++step) {
    std::vector<std::pair<std::uint64_t, Rat>> next;
    next.reserve(acc.size() * x.pm.size());
    for (const auto& [prefix, pw] : acc) {
      for (const auto& [code, m] : x.pm) {
        next.emplace_back(prefix * radix + codec.index_of(code), pw * m);
      }
    }
    acc = std::move(next);
  }
  return Dist::from_masses(std::move(acc));
}

std::pair<Dist, Dist> xor_step(const Dist& x0, const Dist& x1, int j) {
  if (j < 1) throw std::invalid_argument("xor_step: j must be >= 1");
  TupleCodec codec = TupleCodec::for_pair(x0, x1);
  const std::uint64_t radix = codec.alphabet.size();
  // Enumerate bit vectors (b_1..b_j) and accumulate the product law into the
  // branch with parity ⊕b_i. Each parity class has 2^{j-1} equally likely
  // vectors.
  Rat vec_weight(1, 1);
  for (int i = 0; i < j - 1; ++i) vec_weight /= 2;
  std::vector<std::pair<std::uint64_t, Rat>> out0, out1;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << j); ++bits) {
    int parity = __builtin_popcount(bits) & 1;
    std::vector<std::pair<std::uint64_t, Rat>> acc{{0, vec_weight}};
    for (int pos = 0; pos < j; ++pos) {
      const Dist& src = ((bits >> pos) & 1u) ? x1 : x0;
      std::vector<std::pair<std::uint64_t, Rat>> next;
      next.reserve(acc.size() * src.pm.size());
      for (const auto& [prefix, pw] : acc)
        for (const auto& [code, m] : src.pm)
          next.emplace_back(prefix * radix + codec.index_of(code), pw * m);
      acc = std::move(next);
    }
    auto& out = parity ? out1 : out0;
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return {Dist::from_masses(std::move(out0)), Dist::from_masses(std::move(out1))};
}

std::pair<Dist, Dist> product_step(const Dist& x0, const Dist& x1, int j) {
  TupleCodec codec = TupleCodec::for_pair(x0, x1);
  return {power_law(x0, j, codec), power_law(x1, j, codec)};
}

}  // namespace lossylab
