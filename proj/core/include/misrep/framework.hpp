#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/game_model.hpp"

namespace misrep {

enum class PlayerType : std::size_t { normal = 0, commitment = 1 };

inline constexpr std::size_t kNumTypes = 2;

inline std::size_t index_of(PlayerType t) { return static_cast<std::size_t>(t); }
const char* to_string(PlayerType t);
PlayerType player_type_from_string(const std::string& s);

// The short-lived players' subjective universe: a finite model set, per-model
// signal kernels f(y | a, type, m), a joint prior over types x models, and the
// commitment type's mixed action.
//
// Kernels are stored per action for both types. For the commitment type only
// the slice at the commitment action ever matters; commitment_signal(m) is
// that slice, f(. | alpha_hat, commitment, m).
class Framework {
 public:
  Framework(std::vector<std::string> model_names,
            std::vector<std::vector<Distribution>> normal_kernels,
            std::vector<std::vector<Distribution>> commitment_kernels,
            Matrix prior,  // rows = models, cols = {normal, commitment}
            Distribution commitment_action,
            bool normal_correctly_specified);

  std::size_t num_models() const { return model_names_.size(); }
  std::size_t num_actions() const { return commitment_action_.size(); }
  std::size_t num_signals() const { return commitment_signals_.front().size(); }
  const std::vector<std::string>& model_names() const { return model_names_; }

  const Distribution& kernel(PlayerType type, std::size_t m, std::size_t a) const;
  const std::vector<Distribution>& kernels(PlayerType type, std::size_t m) const;
  const Distribution& commitment_signal(std::size_t m) const { return commitment_signals_.at(m); }
  // f(. | alpha, normal, m) for a mixed action alpha.
  Distribution normal_signal(std::size_t m, const Distribution& alpha) const;

  const Matrix& prior() const { return prior_; }
  double prior(PlayerType type, std::size_t m) const { return prior_(m, index_of(type)); }
  double prior_type(PlayerType type) const;
  // Total prior mass of the listed models conditional on `type`.
  double conditional_prior_mass(PlayerType type, const std::vector<std::size_t>& models) const;

  const Distribution& commitment_action() const { return commitment_action_; }
  bool normal_correctly_specified() const { return normal_correctly_specified_; }
  // Smallest kernel entry over all (type, model, action, signal).
  double kernel_floor() const { return floor_; }

  // Checks dimensions against the true monitoring and, when the normal type is
  // declared correctly specified, that every normal kernel equals rho exactly.
  void check_against(const SignalStructure& rho) const;

 private:
  std::vector<std::string> model_names_;
  std::vector<std::vector<Distribution>> normal_kernels_;
  std::vector<std::vector<Distribution>> commitment_kernels_;
  Matrix prior_;
  Distribution commitment_action_;
  bool normal_correctly_specified_;
  std::vector<Distribution> commitment_signals_;
  double floor_ = 0.0;
};

// Sup-norm Hausdorff distance between the model sets of two frameworks, each
// model viewed as the vector of all its kernel entries.
double hausdorff_distance(const Framework& a, const Framework& b);

}  // namespace misrep
