#include "lossylab/boolfn.hpp"

#include <stdexcept>

namespace lossylab {

PermInvariantF PermInvariantF::from_profile(std::string name, std::vector<int> profile) {
  if (profile.size() < 2) throw std::invalid_argument("profile needs at least m = 1");
  for (int b : profile)
    if (b != 0 && b != 1) throw std::invalid_argument("profile entries must be bits");
  PermInvariantF f;
  f.m = static_cast<int>(profile.size()) - 1;
  f.profile = std::move(profile);
  f.name = std::move(name);
  return f;
}

bool PermInvariantF::is_constant() const {
  for (int b : profile)
    if (b != profile[0]) return false;
  return true;
}

int PermInvariantF::eval_weight(int weight) const {
  if (weight < 0 || weight > m) throw std::invalid_argument("weight out of range");
  return profile[static_cast<std::size_t>(weight)];
}

int PermInvariantF::eval(std::span<const int> bits) const {
  if (static_cast<int>(bits.size()) != m)
    throw std::invalid_argument("arity mismatch: f takes " + std::to_string(m) + " bits");
  int w = 0;
  for (int b : bits) w += (b != 0);
  return eval_weight(w);
}

int p_of_f(const PermInvariantF& f) {
  if (f.is_constant()) throw std::domain_error("p(f) undefined for constant f");
  for (int p = 1; p <= f.m; ++p) {
    if (f.profile[static_cast<std::size_t>(p - 1)] == 0 &&
        f.profile[static_cast<std::size_t>(p)] == 1)
      return p;
  }
  // Non-constant but monotonically descending profiles (e.g. NOR) have no
  // ascending flip; the construction needs one.
  throw std::domain_error("p(f) undefined: profile has no 0->1 flip");
}

PermInvariantF make_or(int m) {
  std::vector<int> prof(static_cast<std::size_t>(m) + 1, 1);
  prof[0] = 0;
  return PermInvariantF::from_profile("or", std::move(prof));
}

PermInvariantF make_and(int m) {
  std::vector<int> prof(static_cast<std::size_t>(m) + 1, 0);
  prof[static_cast<std::size_t>(m)] = 1;
  return PermInvariantF::from_profile("and", std::move(prof));
}

PermInvariantF make_majority(int m) {
  std::vector<int> prof(static_cast<std::size_t>(m) + 1, 0);
  for (int w = 0; w <= m; ++w)
    if (2 * w > m) prof[static_cast<std::size_t>(w)] = 1;
  return PermInvariantF::from_profile("maj", std::move(prof));
}

PermInvariantF make_parity(int m) {
  std::vector<int> prof(static_cast<std::size_t>(m) + 1);
  for (int w = 0; w <= m; ++w) prof[static_cast<std::size_t>(w)] = w & 1;
  return PermInvariantF::from_profile("parity", std::move(prof));
}

PermInvariantF make_mod(int m, int k) {
  if (k < 2) throw std::invalid_argument("mod needs k >= 2");
  std::vector<int> prof(static_cast<std::size_t>(m) + 1);
  for (int w = 0; w <= m; ++w) prof[static_cast<std::size_t>(w)] = (w % k) != 0 ? 0 : (w > 0);
  // f = 1 exactly when the weight is a positive multiple of k
  return PermInvariantF::from_profile("mod" + std::to_string(k), std::move(prof));
}

PermInvariantF make_threshold(int m, int k) {
  if (k < 1 || k > m) throw std::invalid_argument("threshold needs 1 <= k <= m");
  std::vector<int> prof(static_cast<std::size_t>(m) + 1, 0);
  for (int w = k; w <= m; ++w) prof[static_cast<std::size_t>(w)] = 1;
  return PermInvariantF::from_profile("threshold" + std::to_string(k), std::move(prof));
}

PermInvariantF builtin_f(const std::string& name, int m) {
  if (name == "or") return make_or(m);
  if (name == "and") return make_and(m);
  if (name == "maj") return make_majority(m);
  if (name == "parity") return make_parity(m);
  if (name.rfind("mod", 0) == 0) return make_mod(m, std::stoi(name.substr(3)));
  if (name.rfind("threshold", 0) == 0) return make_threshold(m, std::stoi(name.substr(9)));
  throw std::invalid_argument("unknown boolean function '" + name + "'");
}

}  // namespace lossylab
