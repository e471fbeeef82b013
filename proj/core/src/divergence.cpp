#include "misrep/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "misrep/errors.hpp"
#include "misrep/lp.hpp"

namespace misrep {

double kl(const Distribution& p, const Distribution& q) {
  require_same_size(p.size(), q.size(), "kl arguments");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      std::ostringstream os;
      os << "relative entropy is infinite: q vanishes at coordinate " << i << " where p = " << p[i];
      throw DomainError(os.str());
    }
    s += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(s, 0.0);
}

double tv(const Distribution& p, const Distribution& q) {
  require_same_size(p.size(), q.size(), "tv arguments");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return std::min(0.5 * s, 1.0);
}

namespace {

SeparatingHyperplane separating_hyperplane(const Distribution& q, const SignalStructure& rho) {
  const std::size_t Y = rho.num_signals();
  const std::size_t A = rho.num_actions();
  // Variables: w_0..w_{Y-1}, t (all free). maximize w.q - t.
  lp::Problem prob(Y + 1);
  for (std::size_t y = 0; y < Y; ++y) {
    prob.free[y] = true;
    prob.objective[y] = -q[y];
  }
  prob.free[Y] = true;
  prob.objective[Y] = 1.0;
  for (std::size_t a = 0; a < A; ++a) {
    std::vector<double> row(Y + 1, 0.0);
    for (std::size_t y = 0; y < Y; ++y) row[y] = rho(y, a);
    row[Y] = -1.0;
    prob.add(std::move(row), lp::Sense::less_equal, 0.0);
  }
  for (std::size_t y = 0; y < Y; ++y) {
    std::vector<double> row(Y + 1, 0.0);
    row[y] = 1.0;
    prob.add(row, lp::Sense::less_equal, 1.0);
    prob.add(std::move(row), lp::Sense::greater_equal, -1.0);
  }
  const auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw InternalError("separating hyperplane LP not optimal");
  SeparatingHyperplane h;
  h.normal.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(Y));
  h.offset = sol.x[Y];
  h.margin = -sol.objective;
  return h;
}

}  // namespace

HullMembership hull_membership(const Distribution& q, const SignalStructure& rho) {
  require_same_size(q.size(), rho.num_signals(), "hull membership signal sets");
  const std::size_t Y = rho.num_signals();
  const std::size_t A = rho.num_actions();
  // Variables: alpha (A), s_plus (Y), s_minus (Y); minimize the L1 residual.
  lp::Problem prob(A + 2 * Y);
  for (std::size_t k = A; k < A + 2 * Y; ++k) prob.objective[k] = 1.0;
  for (std::size_t y = 0; y < Y; ++y) {
    std::vector<double> row(A + 2 * Y, 0.0);
    for (std::size_t a = 0; a < A; ++a) row[a] = rho(y, a);
    row[A + y] = 1.0;
    row[A + Y + y] = -1.0;
    prob.add(std::move(row), lp::Sense::equal, q[y]);
  }
  {
    std::vector<double> row(A + 2 * Y, 0.0);
    for (std::size_t a = 0; a < A; ++a) row[a] = 1.0;
    prob.add(std::move(row), lp::Sense::equal, 1.0);
  }
  const auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw InternalError("hull membership LP not optimal");

  HullMembership out;
  out.residual = std::max(sol.objective, 0.0);
  out.member = out.residual <= kHullTolerance;
  if (out.member) {
    std::vector<double> alpha(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(A));
    double total = 0.0;
    for (double& a : alpha) {
      a = std::max(a, 0.0);
      total += a;
    }
    for (double& a : alpha) a /= total;
    out.witness = Distribution(std::move(alpha));
  } else {
    out.certificate = separating_hyperplane(q, rho);
  }
  return out;
}

AttainableFit min_kl_over_attainable(const Distribution& q, const SignalStructure& rho,
                                    const SimplexMinimizeOptions& options) {
  require_same_size(q.size(), rho.num_signals(), "attainable fit signal sets");
  if (!(q.min_weight() > 0.0)) throw DomainError("target distribution must have full support");
  const std::size_t A = rho.num_actions();
  const std::size_t Y = rho.num_signals();
  auto mix = [&rho, A, Y](std::span<const double> alpha, std::vector<double>& out) {
    out.assign(Y, 0.0);
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t y = 0; y < Y; ++y) out[y] += alpha[a] * rho(y, a);
  };
  SimplexObjective f;
  f.value = [&, mix](std::span<const double> alpha) {
    std::vector<double> r;
    mix(alpha, r);
    double s = 0.0;
    for (std::size_t y = 0; y < Y; ++y)
      if (r[y] > 0.0) s += r[y] * std::log(r[y] / q[y]);
    return s;
  };
  f.gradient = [&, mix](std::span<const double> alpha, std::span<double> g) {
    std::vector<double> r;
    mix(alpha, r);
    for (std::size_t a = 0; a < A; ++a) {
      double s = 0.0;
      for (std::size_t y = 0; y < Y; ++y) s += rho(y, a) * (std::log(r[y] / q[y]) + 1.0);
      g[a] = s;
    }
  };
  const auto res = minimize_on_simplex(f, A, options);
  return {std::max(res.value, 0.0), Distribution(res.argmin), res.gap, res.converged};
}

AttainableFit min_kl_to_mixture(const Distribution& target, const std::vector<Distribution>& kernels,
                                const SimplexMinimizeOptions& options) {
  if (kernels.empty()) throw DimensionError("mixture fit with no kernels");
  const std::size_t A = kernels.size();
  const std::size_t Y = target.size();
  for (const auto& k : kernels) {
    require_same_size(k.size(), Y, "mixture fit kernel");
    if (!(k.min_weight() > 0.0)) throw DomainError("mixture kernels must have full support");
  }
  auto mix = [&kernels, A, Y](std::span<const double> alpha, std::vector<double>& out) {
    out.assign(Y, 0.0);
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t y = 0; y < Y; ++y) out[y] += alpha[a] * kernels[a][y];
  };
  SimplexObjective f;
  f.value = [&, mix](std::span<const double> alpha) {
    std::vector<double> g;
    mix(alpha, g);
    double s = 0.0;
    for (std::size_t y = 0; y < Y; ++y)
      if (target[y] > 0.0) s += target[y] * std::log(target[y] / g[y]);
    return s;
  };
  f.gradient = [&, mix](std::span<const double> alpha, std::span<double> grad) {
    std::vector<double> g;
    mix(alpha, g);
    for (std::size_t a = 0; a < A; ++a) {
      double s = 0.0;
      for (std::size_t y = 0; y < Y; ++y) s -= target[y] * kernels[a][y] / g[y];
      grad[a] = s;
    }
  };
  const auto res = minimize_on_simplex(f, A, options);
  return {std::max(res.value, 0.0), Distribution(res.argmin), res.gap, res.converged};
}

bool SeparationReport::any_hull_member() const {
  return std::any_of(per_model_hull.begin(), per_model_hull.end(),
                     [](const HullMembership& h) { return h.member; });
}

SeparationReport separation_value(const Framework& framework, const SignalStructure& rho) {
  framework.check_against(rho);
  SeparationReport out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < framework.num_models(); ++m) {
    const Distribution& fhat = framework.commitment_signal(m);
    const auto fit = min_kl_over_attainable(fhat, rho);
    auto hull = hull_membership(fhat, rho);
    const bool kl_zero = fit.value < 1e-7;
    if (kl_zero != hull.member) out.routes_agree = false;
    out.per_model_value.push_back(fit.value);
    if (fit.value < out.value) {
      out.value = fit.value;
      out.argmin_model = m;
      out.argmin_alpha = hull.witness ? *hull.witness : fit.argmin;
    }
    out.per_model_hull.push_back(std::move(hull));
  }
  return out;
}

std::optional<AlphaStar> find_alpha_star(const Framework& framework, const SignalStructure& rho) {
  const auto report = separation_value(framework, rho);
  std::optional<AlphaStar> best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < framework.num_models(); ++m) {
    const auto& h = report.per_model_hull[m];
    if (h.member && report.per_model_value[m] <= kZeroSeparation && h.residual < best_residual) {
      best_residual = h.residual;
      best = AlphaStar{m, *h.witness};
    }
  }
  return best;
}

CommitmentNormalFit dc_dn(const Framework& framework, const SignalStructure& rho,
                          const Distribution& alpha_star) {
  framework.check_against(rho);
  const Distribution target = mix_signal_dist(rho, alpha_star);
  CommitmentNormalFit out;
  out.d_c = std::numeric_limits<double>::infinity();
  out.d_n = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < framework.num_models(); ++m) {
    const double dc = kl(target, framework.commitment_signal(m));
    if (dc < out.d_c) {
      out.d_c = dc;
      out.m_star = m;
    }
    const auto fit = min_kl_to_mixture(target, framework.kernels(PlayerType::normal, m));
    if (fit.value < out.d_n) {
      out.d_n = fit.value;
      out.normal_model = m;
      out.normal_alpha = fit.argmin;
    }
  }
  return out;
}

NormalFavoringMargin normal_favoring_margin(const Framework& framework, const SignalStructure& rho,
                                            const std::vector<std::size_t>& subset) {
  if (subset.empty() || !(framework.conditional_prior_mass(PlayerType::normal, subset) > 0.0)) {
    throw DomainError("normal-favoring subset has zero prior mass under the normal type");
  }
  NormalFavoringMargin out;
  // alpha -> D(rho_alpha || f_alpha) is convex, so its maximum sits at a vertex.
  for (std::size_t m : subset) {
    for (std::size_t a = 0; a < framework.num_actions(); ++a) {
      out.worst_normal_fit =
          std::max(out.worst_normal_fit, kl(rho.row(a), framework.kernel(PlayerType::normal, m, a)));
    }
  }
  out.commitment_separation = separation_value(framework, rho).value;
  return out;
}

bool normal_favoring_check(const Framework& framework, const SignalStructure& rho,
                           const std::vector<std::size_t>& subset) {
  return normal_favoring_margin(framework, rho, subset).holds();
}

}  // namespace misrep
