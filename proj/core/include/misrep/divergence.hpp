#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/framework.hpp"
#include "misrep/game_model.hpp"
#include "misrep/simplex_minimize.hpp"

namespace misrep {

// Relative entropy D(p || q) in nats with 0 ln 0 = 0. Throws DomainError when
// q vanishes where p is positive.
double kl(const Distribution& p, const Distribution& q);

// Total variation distance (1/2) sum |p - q|.
double tv(const Distribution& p, const Distribution& q);

// Tolerance used when deciding that q lies in co{rho(.|a)}.
inline constexpr double kHullTolerance = 1e-9;
// Separation values at or below this count as zero.
inline constexpr double kZeroSeparation = 1e-8;

// Hyperplane w . x = offset with w . rho(.|a) <= offset for every action and
// w . q = offset + margin, margin > 0.
struct SeparatingHyperplane {
  std::vector<double> normal;
  double offset = 0.0;
  double margin = 0.0;
};

struct HullMembership {
  bool member = false;
  // L1 distance from q to the hull found by the feasibility LP.
  double residual = 0.0;
  std::optional<Distribution> witness;
  std::optional<SeparatingHyperplane> certificate;
};

// Decides q in co{rho(.|a) : a in A} by linear feasibility.
HullMembership hull_membership(const Distribution& q, const SignalStructure& rho);

struct AttainableFit {
  double value = 0.0;
  Distribution argmin;
  double gap = 0.0;
  bool converged = false;
};

// min over alpha of D(rho_alpha || q).
AttainableFit min_kl_over_attainable(const Distribution& q, const SignalStructure& rho,
                                    const SimplexMinimizeOptions& options = {});

// min over alpha of D(target || sum_a alpha(a) kernels[a]).
AttainableFit min_kl_to_mixture(const Distribution& target, const std::vector<Distribution>& kernels,
                                const SimplexMinimizeOptions& options = {});

struct SeparationReport {
  double value = 0.0;
  Distribution argmin_alpha;
  std::size_t argmin_model = 0;
  std::vector<double> per_model_value;
  std::vector<HullMembership> per_model_hull;
  // The LP route and the KL route agree on whether the value is zero.
  bool routes_agree = true;

  // Membership is decided by the LP; the KL value can be tiny without the
  // target lying in the hull.
  bool separating() const { return !any_hull_member(); }
  bool any_hull_member() const;
};

// inf over alpha and m of D(rho_alpha || f(. | alpha_hat, commitment, m)),
// together with per-model hull decisions. routes_agree records whether the KL
// value is below 1e-7 exactly when some model's target lies in the hull.
SeparationReport separation_value(const Framework& framework, const SignalStructure& rho);

struct AlphaStar {
  std::size_t model = 0;
  Distribution alpha;
};

// The model m* and action alpha* with rho_alpha* = f(. | alpha_hat, commitment, m*)
// when the framework is not commitment-separating.
std::optional<AlphaStar> find_alpha_star(const Framework& framework, const SignalStructure& rho);

struct CommitmentNormalFit {
  double d_c = 0.0;
  double d_n = 0.0;
  std::size_t m_star = 0;
  // Model and mixed action attaining d_n.
  std::size_t normal_model = 0;
  Distribution normal_alpha;
};

// d_C = min_m D(rho_alpha* || f(. | alpha_hat, commitment, m)) and
// d_N = min_{alpha, m} D(rho_alpha* || f(. | alpha, normal, m)).
CommitmentNormalFit dc_dn(const Framework& framework, const SignalStructure& rho,
                          const Distribution& alpha_star);

struct NormalFavoringMargin {
  // max over the subset of max_alpha D(rho_alpha || f(. | alpha, normal, m)).
  double worst_normal_fit = 0.0;
  // min over alpha and all models of D(rho_alpha || f(. | alpha_hat, commitment, m')).
  double commitment_separation = 0.0;

  double margin() const { return commitment_separation - worst_normal_fit; }
  bool holds() const { return worst_normal_fit < commitment_separation && commitment_separation > kZeroSeparation; }
};

// Both sides of the strict normal-favoring inequality for the given subset.
// Throws DomainError when the subset has zero prior mass under the normal type.
NormalFavoringMargin normal_favoring_margin(const Framework& framework, const SignalStructure& rho,
                                            const std::vector<std::size_t>& subset);

bool normal_favoring_check(const Framework& framework, const SignalStructure& rho,
                           const std::vector<std::size_t>& subset);

}  // namespace misrep
