#pragma once

#include <optional>
#include <string>

namespace lossylab {

// Threshold family of the dichotomy theorems, as pure arithmetic:
//   θ_szk = (1−2μ)² / (δ(λ)+γ)      θ_efi = (1−2μ) − 3(δ(λ)+γ)
//   θ_owf = (1−10μ) − (δ(λ)+γ)      θ_ows = 1 − (δ(λ)+γ+4√(2μ))
//   τ_ows = 1−2μ − (δ(λ)+γ)
struct ThetaReport {
  double mu = 0, lambda = 0, gamma = 0;
  int m = 1;
  double delta = 0;  // δ(λ)
  double theta_szk = 0, theta_efi = 0, theta_owf = 0, theta_ows = 0, tau_ows = 0;
  bool szk_degenerate = false;  // δ(λ)+γ = 0, θ_szk diverges
};

ThetaReport theta_report(double mu, double lambda, double gamma, int m = 1);

// λ = max{1, 13 + log2(m·n·d²/γ³)}; d = 0 falls to the first branch.
double lossiness_bound_wcdist(double m, double n, double d, double gamma);

// λ = max{1+h, 13 + h + log2(n·d²/γ³)}. The underlying lemma is stated for
// the identity f (one input); m is accepted for symmetry with the Karp bound
// and does not enter the formula.
double turing_lossiness_bound(double m, double n, double d, double gamma, double h);

// Per-theorem "hypotheses satisfied" flags. Runtime-shape hypotheses
// (2^{O(·)}, Ω(·)) are checked with the implicit constants set to 1 and the
// binding inequality is spelled out in each flag.
struct RegimeFlag {
  bool satisfied = false;
  std::string binding;
};

struct RegimeReport {
  RegimeFlag generic_lossy_owf;  // μ ≤ 2^{−λ−8}, γ = 2^{−λ−4} ⇒ θ_owf ≥ 2^{−λ−3}
  double generic_theta_owf = 0;
  RegimeFlag lossy_to_owf;       // adds T,m ≤ 2^{λ+log2 n}
  RegimeFlag gap_dichotomy;      // d² ≤ γ³/(mn), μ,γ ≤ 1e−5
  double gap_dichotomy_theta = 0;  // (1−10μ) − (δ(13)+γ), sign reported as-is
  RegimeFlag gap_to_fgowf;       // μ ≤ 1e−5, d ≤ m^{2.5}·n / 2^{1.5·max(T,m)-exponent}
  RegimeFlag no_owf_lossy;       // surfaces the runtime exponent τ_Π/loglog n
  RegimeFlag aux2_runtime;       // refuses T sublinear in m at constant-bounded μ
};

RegimeReport regime_check(double t_exponent, double m_exponent, double mu, double gamma,
                          double lambda, double n, double d, double eta);

// τ = s*·n/log2 n plus the kSAT corollaries' ceilings as exponents (and as
// numbers when a concrete m is supplied).
struct KsatReport {
  double tau = 0;
  double runtime_exponent = 0;   // s*·n/(log2 n · (1+η))
  double distance_exponent = 0;  // 1.5 × runtime_exponent
  std::optional<double> distance_ceiling_log2;  // 2.5·log2 m + log2 n − distance_exponent
  bool s_star_within_bound = true;              // 0 < s* ≤ 2k·s_k when s_k given
};

KsatReport ksat_params(int k, double s_star, double n, double eta,
                       std::optional<double> m = {}, std::optional<double> s_k = {});

}  // namespace lossylab
