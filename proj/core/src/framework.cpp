#include "misrep/framework.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "misrep/errors.hpp"

namespace misrep {

const char* to_string(PlayerType t) {
  return t == PlayerType::normal ? "normal" : "commitment";
}

PlayerType player_type_from_string(const std::string& s) {
  if (s == "normal") return PlayerType::normal;
  if (s == "commitment") return PlayerType::commitment;
  throw DomainError("unknown player type '" + s + "' (expected normal or commitment)");
}

Framework::Framework(std::vector<std::string> model_names,
                     std::vector<std::vector<Distribution>> normal_kernels,
                     std::vector<std::vector<Distribution>> commitment_kernels, Matrix prior,
                     Distribution commitment_action, bool normal_correctly_specified)
    : model_names_(std::move(model_names)),
      normal_kernels_(std::move(normal_kernels)),
      commitment_kernels_(std::move(commitment_kernels)),
      prior_(std::move(prior)),
      commitment_action_(std::move(commitment_action)),
      normal_correctly_specified_(normal_correctly_specified) {
  const std::size_t M = model_names_.size();
  if (M == 0) throw DimensionError("framework with an empty model set");
  require_same_size(normal_kernels_.size(), M, "normal kernels vs models");
  require_same_size(commitment_kernels_.size(), M, "commitment kernels vs models");
  require_same_size(prior_.rows(), M, "prior rows vs models");
  require_same_size(prior_.cols(), kNumTypes, "prior columns vs types");
  const std::size_t A = commitment_action_.size();
  const std::size_t Y = normal_kernels_.front().empty() ? 0 : normal_kernels_.front().front().size();
  if (Y == 0) throw DimensionError("framework kernels over an empty signal set");

  floor_ = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < M; ++m) {
    for (const auto* family : {&normal_kernels_[m], &commitment_kernels_[m]}) {
      require_same_size(family->size(), A, "kernel actions for model " + model_names_[m]);
      for (std::size_t a = 0; a < A; ++a) {
        require_same_size((*family)[a].size(), Y, "kernel signals for model " + model_names_[m]);
        floor_ = std::min(floor_, (*family)[a].min_weight());
      }
    }
  }
  if (!(floor_ > 0.0)) {
    throw ProbabilityError("framework kernels must be bounded away from zero");
  }

  double total = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t t = 0; t < kNumTypes; ++t) {
      if (!(prior_(m, t) > 0.0) || !std::isfinite(prior_(m, t))) {
        std::ostringstream os;
        os << "prior lacks full support: pi(" << to_string(static_cast<PlayerType>(t)) << ", "
           << model_names_[m] << ") = " << prior_(m, t);
        throw ProbabilityError(os.str());
      }
      total += prior_(m, t);
    }
  }
  if (std::abs(total - 1.0) > Distribution::kInputTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "prior sums to " << total;
    throw ProbabilityError(os.str());
  }
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t t = 0; t < kNumTypes; ++t) prior_(m, t) /= total;

  commitment_signals_.reserve(M);
  for (std::size_t m = 0; m < M; ++m)
    commitment_signals_.push_back(mixture(commitment_kernels_[m], commitment_action_.weights()));
}

const Distribution& Framework::kernel(PlayerType type, std::size_t m, std::size_t a) const {
  return kernels(type, m).at(a);
}

const std::vector<Distribution>& Framework::kernels(PlayerType type, std::size_t m) const {
  return type == PlayerType::normal ? normal_kernels_.at(m) : commitment_kernels_.at(m);
}

Distribution Framework::normal_signal(std::size_t m, const Distribution& alpha) const {
  require_same_size(alpha.size(), num_actions(), "normal-type mixed action");
  return mixture(normal_kernels_.at(m), alpha.weights());
}

double Framework::prior_type(PlayerType type) const {
  double s = 0.0;
  for (std::size_t m = 0; m < num_models(); ++m) s += prior(type, m);
  return s;
}

double Framework::conditional_prior_mass(PlayerType type, const std::vector<std::size_t>& models) const {
  double s = 0.0;
  for (std::size_t m : models) {
    if (m >= num_models()) throw DimensionError("model index out of range");
    s += prior(type, m);
  }
  return s / prior_type(type);
}

void Framework::check_against(const SignalStructure& rho) const {
  require_same_size(num_actions(), rho.num_actions(), "framework actions vs rho");
  require_same_size(num_signals(), rho.num_signals(), "framework signals vs rho");
  if (!normal_correctly_specified_) return;
  for (std::size_t m = 0; m < num_models(); ++m) {
    for (std::size_t a = 0; a < num_actions(); ++a) {
      if (normal_kernels_[m][a] != rho.row(a)) {
        throw DomainError("framework declared correctly specified about the normal type, but model " +
                          model_names_[m] + " differs from rho at action " + std::to_string(a));
      }
    }
  }
}

namespace {
double model_distance(const Framework& a, std::size_t ma, const Framework& b, std::size_t mb) {
  double d = 0.0;
  for (PlayerType t : {PlayerType::normal, PlayerType::commitment}) {
    for (std::size_t act = 0; act < a.num_actions(); ++act) {
      const auto& ka = a.kernel(t, ma, act);
      const auto& kb = b.kernel(t, mb, act);
      for (std::size_t y = 0; y < ka.size(); ++y) d = std::max(d, std::abs(ka[y] - kb[y]));
    }
  }
  return d;
}

double directed(const Framework& a, const Framework& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.num_models(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.num_models(); ++j) nearest = std::min(nearest, model_distance(a, i, b, j));
    worst = std::max(worst, nearest);
  }
  return worst;
}
}  // namespace

double hausdorff_distance(const Framework& a, const Framework& b) {
  require_same_size(a.num_actions(), b.num_actions(), "hausdorff actions");
  require_same_size(a.num_signals(), b.num_signals(), "hausdorff signals");
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace misrep
