#include "misrep/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "misrep/divergence.hpp"
#include "misrep/errors.hpp"

namespace misrep {

namespace {

// Solves the square system g x = rhs by Gaussian elimination with partial pivoting.
std::vector<double> solve_square(std::vector<std::vector<double>> g, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(g[r][c]) > std::abs(g[piv][c])) piv = r;
    if (std::abs(g[piv][c]) < 1e-13) throw DomainError("payoff lift: monitoring matrix is singular");
    std::swap(g[c], g[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = g[r][c] / g[c][c];
      for (std::size_t k = c; k < n; ++k) g[r][k] -= f * g[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= g[i][k] * x[k];
    x[i] = s / g[i][i];
  }
  return x;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

ActionLabels product_labels(std::vector<std::string> signals) {
  return {{"a_h", "a_l"}, {"b_h", "b_l"}, std::move(signals)};
}

// Long-run payoffs u(a, b) and short-run ex ante payoffs v(a, b) of the product-choice game.
const Matrix& product_u() {
  static const Matrix u = Matrix::from_rows({{2.0, 0.0}, {3.0, 1.0}});
  return u;
}
const Matrix& product_v() {
  static const Matrix v = Matrix::from_rows({{3.0, 2.0}, {0.0, 1.0}});
  return v;
}

Matrix single_model_prior(double mu0) {
  require(mu0 > 0.0 && mu0 < 1.0, "mu0 must lie in (0, 1)");
  return Matrix::from_rows({{1.0 - mu0, mu0}});
}

std::vector<Distribution> rows_of(const SignalStructure& rho) {
  return {rho.rows().begin(), rho.rows().end()};
}

}  // namespace

Matrix lift_short_run_payoffs(const SignalStructure& rho, const Matrix& v) {
  const std::size_t A = rho.num_actions();
  const std::size_t Y = rho.num_signals();
  require_same_size(v.rows(), A, "ex ante payoff rows vs actions");
  const std::size_t B = v.cols();
  Matrix out(B, Y);
  for (std::size_t b = 0; b < B; ++b) {
    std::vector<double> col(A);
    for (std::size_t a = 0; a < A; ++a) col[a] = v(a, b);
    std::vector<double> vt(Y, 0.0);
    if (Y >= A) {
      // v_tilde = R^T (R R^T)^{-1} v.
      std::vector<std::vector<double>> g(A, std::vector<double>(A, 0.0));
      for (std::size_t i = 0; i < A; ++i)
        for (std::size_t j = 0; j < A; ++j)
          for (std::size_t y = 0; y < Y; ++y) g[i][j] += rho(y, i) * rho(y, j);
      const auto w = solve_square(std::move(g), col);
      for (std::size_t y = 0; y < Y; ++y)
        for (std::size_t a = 0; a < A; ++a) vt[y] += rho(y, a) * w[a];
    } else {
      std::vector<std::vector<double>> g(Y, std::vector<double>(Y, 0.0));
      std::vector<double> rhs(Y, 0.0);
      for (std::size_t i = 0; i < Y; ++i) {
        for (std::size_t a = 0; a < A; ++a) rhs[i] += rho(i, a) * col[a];
        for (std::size_t j = 0; j < Y; ++j)
          for (std::size_t a = 0; a < A; ++a) g[i][j] += rho(i, a) * rho(j, a);
      }
      vt = solve_square(std::move(g), rhs);
      for (std::size_t a = 0; a < A; ++a) {
        double s = 0.0;
        for (std::size_t y = 0; y < Y; ++y) s += rho(y, a) * vt[y];
        if (std::abs(s - col[a]) > 1e-9)
          throw DomainError("payoff lift: ex ante payoffs are not reproducible from the signals");
      }
    }
    for (std::size_t y = 0; y < Y; ++y) out(b, y) = vt[y];
  }
  return out;
}

Scenario product_choice(double p, double q, double epsilon, double mu0) {
  require(0.0 < q && q < p && p < 1.0, "product_choice needs 0 < q < p < 1");
  require(epsilon >= 0.0 && epsilon < 1.0 - p, "product_choice needs 0 <= epsilon < 1 - p");
  SignalStructure rho({Distribution({p, 1.0 - p}), Distribution({q, 1.0 - q})});
  StageGame game(product_labels({"y_h", "y_l"}), product_u(), lift_short_run_payoffs(rho, product_v()), rho);
  const Distribution fhat({p + epsilon, 1.0 - p - epsilon});
  Framework fw({"m"}, {rows_of(rho)}, {{fhat, fhat}}, single_model_prior(mu0),
               Distribution::point_mass(2, 0), true);
  std::optional<Distribution> alpha_star;
  if (epsilon == 0.0) alpha_star = Distribution::point_mass(2, 0);
  return {"product_choice", {{"p", p}, {"q", q}, {"epsilon", epsilon}, {"mu0", mu0}},
          std::move(game), std::move(fw), std::move(alpha_star)};
}

Scenario three_signal(double p, double q, double r, double epsilon, double x, double mu0) {
  require(0.0 < q && q < p && p < 1.0, "three_signal needs 0 < q < p < 1");
  require(r > 0.0 && r < 1.0 - p, "three_signal needs r in (0, 1 - p)");
  require(x > 0.5 && x < 1.0, "three_signal needs x in (1/2, 1)");
  const double high = x * p + (1.0 - x) * q;
  require(epsilon >= 0.0 && r + epsilon < 1.0 - high,
          "three_signal needs epsilon >= 0 and r + epsilon < 1 - x p - (1 - x) q");
  SignalStructure rho({Distribution({p, 1.0 - p - r, r}), Distribution({q, 1.0 - q - r, r})});
  StageGame game(product_labels({"y_h", "y_l", "y_u"}), product_u(),
                 lift_short_run_payoffs(rho, product_v()), rho);
  const Distribution fhat({high, 1.0 - high - r - epsilon, r + epsilon});
  Framework fw({"m"}, {rows_of(rho)}, {{fhat, fhat}}, single_model_prior(mu0),
               Distribution({x, 1.0 - x}), true);
  std::optional<Distribution> alpha_star;
  if (epsilon == 0.0) alpha_star = Distribution({x, 1.0 - x});
  return {"three_signal",
          {{"p", p}, {"q", q}, {"r", r}, {"epsilon", epsilon}, {"x", x}, {"mu0", mu0}},
          std::move(game), std::move(fw), std::move(alpha_star)};
}

Scenario counter_example(double p, double q, double epsilon, double x, double mu0) {
  require(0.0 < q && q < p && p < 1.0, "counter_example needs 0 < q < p < 1");
  require(x > 0.5 && x < 1.0, "counter_example needs x in (1/2, 1)");
  require(epsilon >= 0.0 && epsilon < 1.0 - p, "counter_example needs 0 <= epsilon < 1 - p");
  const double x_eps = x * (1.0 + epsilon / (p - q));
  if (!(x_eps < 1.0)) {
    std::ostringstream os;
    os << "counter_example: x_eps = " << x_eps << " is not below 1";
    throw DomainError(os.str());
  }
  SignalStructure rho({Distribution({p, 1.0 - p}), Distribution({q, 1.0 - q})});
  StageGame game(product_labels({"y_h", "y_l"}), product_u(), lift_short_run_payoffs(rho, product_v()), rho);
  Framework fw({"m"}, {rows_of(rho)},
               {{Distribution({p + epsilon, 1.0 - p - epsilon}), Distribution({q, 1.0 - q})}},
               single_model_prior(mu0), Distribution({x, 1.0 - x}), true);
  return {"counter_example",
          {{"p", p}, {"q", q}, {"epsilon", epsilon}, {"x", x}, {"mu0", mu0}},
          std::move(game), std::move(fw), Distribution({x_eps, 1.0 - x_eps})};
}

Scenario normal_misspec_scenario(double mu0) {
  SignalStructure rho({Distribution({0.6, 0.4}), Distribution({0.3, 0.7})});
  StageGame game(product_labels({"y_h", "y_l"}), product_u(), lift_short_run_payoffs(rho, product_v()), rho);
  const Distribution fhat({0.58, 0.42});
  Framework fw({"m"}, {{Distribution({0.45, 0.55}), Distribution({0.15, 0.85})}}, {{fhat, fhat}},
               single_model_prior(mu0), Distribution::point_mass(2, 0), false);
  return {"normal_misspec", {{"mu0", mu0}}, std::move(game), std::move(fw),
          Distribution::point_mass(2, 0)};
}

namespace {
constexpr char kPerturbedTag = '~';
}

std::vector<std::size_t> unperturbed_models(const Framework& member) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < member.num_models(); ++m)
    if (member.model_names()[m].find(kPerturbedTag) == std::string::npos) out.push_back(m);
  return out;
}

std::vector<Framework> perturbation_sequence(const SignalStructure& rho, const Framework& base,
                                             std::size_t n_max, const PerturbationOptions& options) {
  require(options.shift_scale > 0.0, "perturbation shift scale must be positive");
  require(options.kappa > 0.0 && options.kappa < 1.0, "perturbation kappa must lie in (0, 1)");
  if (!separation_value(base, rho).separating())
    throw DomainError("perturbation base must be commitment-separating");

  const std::size_t M = base.num_models();
  const std::size_t A = base.num_actions();
  const std::size_t Y = base.num_signals();
  std::vector<Framework> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double s = options.shift_scale / static_cast<double>(n + 2);
    if (!(s < 1.0)) {
      std::ostringstream os;
      os << "perturbation n=" << n << ": shift " << s
         << " moves the normal kernels onto a point mass (kernel floor margin " << 1.0 - s << ")";
      throw DomainError(os.str());
    }
    std::vector<std::string> names;
    std::vector<std::vector<Distribution>> normal;
    std::vector<std::vector<Distribution>> commitment;
    Matrix prior(2 * M, kNumTypes);
    for (std::size_t m = 0; m < M; ++m) {
      names.push_back(base.model_names()[m]);
      normal.push_back(base.kernels(PlayerType::normal, m));
      commitment.push_back(base.kernels(PlayerType::commitment, m));
      for (std::size_t t = 0; t < kNumTypes; ++t)
        prior(m, t) = options.kappa * base.prior(static_cast<PlayerType>(t), m);
    }
    for (std::size_t m = 0; m < M; ++m) {
      names.push_back(base.model_names()[m] + kPerturbedTag + std::to_string(n));
      std::vector<Distribution> shifted;
      for (std::size_t a = 0; a < A; ++a) {
        const auto& k = base.kernel(PlayerType::normal, m, a);
        std::vector<double> w(Y);
        for (std::size_t y = 0; y < Y; ++y) w[y] = (1.0 - s) * k[y] + (y + 1 == Y ? s : 0.0);
        shifted.emplace_back(std::move(w));
      }
      normal.push_back(std::move(shifted));
      commitment.push_back(base.kernels(PlayerType::commitment, m));
      for (std::size_t t = 0; t < kNumTypes; ++t)
        prior(M + m, t) = (1.0 - options.kappa) * base.prior(static_cast<PlayerType>(t), m);
    }
    Framework member(std::move(names), std::move(normal), std::move(commitment), std::move(prior),
                     base.commitment_action(), false);
    const auto margin = normal_favoring_margin(member, rho, unperturbed_models(member));
    if (!margin.holds()) {
      std::ostringstream os;
      os.precision(17);
      os << "perturbation n=" << n << " violates the normal-favoring inequality: worst normal fit "
         << margin.worst_normal_fit << " vs commitment separation " << margin.commitment_separation
         << " (margin " << margin.margin() << ")";
      throw DomainError(os.str());
    }
    out.push_back(std::move(member));
  }
  return out;
}

double normal_misspecification_radius(const Framework& framework, const SignalStructure& rho) {
  framework.check_against(rho);
  double r = 0.0;
  for (std::size_t m = 0; m < framework.num_models(); ++m)
    for (std::size_t a = 0; a < framework.num_actions(); ++a)
      r = std::max(r, tv(framework.kernel(PlayerType::normal, m, a), rho.row(a)));
  return r;
}

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog = {
      {"product_choice", {{"p", 0.6}, {"q", 0.3}, {"epsilon", 0.1}, {"mu0", 0.5}},
       "product-choice game, commitment believed to over-produce y_h"},
      {"three_signal", {{"p", 0.6}, {"q", 0.3}, {"r", 0.1}, {"epsilon", 0.02}, {"x", 0.55}, {"mu0", 0.5}},
       "three signals, commitment believed to over-produce the uninformative signal"},
      {"counter_example", {{"p", 0.6}, {"q", 0.3}, {"epsilon", 0.05}, {"x", 0.55}, {"mu0", 0.5}},
       "commitment misspecified at a_h only; attainable, so not separating"},
      {"normal_misspec", {{"mu0", 0.5}}, "misspecified normal kernels with d_C < d_N"},
      {"perturbed_product_choice",
       {{"p", 0.6}, {"q", 0.3}, {"epsilon", 0.15}, {"mu0", 0.5}, {"n", 3}, {"shift_scale", 1.0},
        {"kappa", 0.1}},
       "member n of the normal-favoring perturbation of product_choice"},
  };
  return catalog;
}

Scenario make_scenario(const std::string& name, const std::map<std::string, double>& overrides) {
  const auto& catalog = scenario_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(),
                               [&](const ScenarioInfo& s) { return s.name == name; });
  if (it == catalog.end()) throw DomainError("unknown scenario '" + name + "'");
  std::map<std::string, double> p(it->defaults.begin(), it->defaults.end());
  for (const auto& [k, v] : overrides) {
    if (!p.count(k)) throw DomainError("scenario " + name + " has no parameter '" + k + "'");
    p[k] = v;
  }
  if (name == "product_choice") return product_choice(p["p"], p["q"], p["epsilon"], p["mu0"]);
  if (name == "three_signal")
    return three_signal(p["p"], p["q"], p["r"], p["epsilon"], p["x"], p["mu0"]);
  if (name == "counter_example") return counter_example(p["p"], p["q"], p["epsilon"], p["x"], p["mu0"]);
  if (name == "normal_misspec") return normal_misspec_scenario(p["mu0"]);

  const double n = p["n"];
  require(n >= 1.0 && n == std::floor(n), "perturbation index n must be a positive integer");
  auto base = product_choice(p["p"], p["q"], p["epsilon"], p["mu0"]);
  auto members = perturbation_sequence(base.game.rho(), base.framework, static_cast<std::size_t>(n),
                                       {p["shift_scale"], p["kappa"]});
  std::vector<std::pair<std::string, double>> params;
  for (const auto& [k, _] : it->defaults) params.emplace_back(k, p[k]);
  return {name, std::move(params), std::move(base.game), std::move(members.back()), std::nullopt};
}

}  // namespace misrep
