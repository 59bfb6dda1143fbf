// The environment contract shared by every task and consumed by the trainer.
//
// Environments are deterministic functions of (internal state, action, seed):
// replaying the same seed and action sequence reproduces the same StepResult
// sequence bit-exactly.
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "attmarl/tensor.hpp"

namespace attmarl {

struct ActionSpace {
  enum class Kind { Simplex, Box };

  Kind kind = Kind::Box;
  // Simplex: sizes of the probability groups the action vector is split into
  // (a routing agent has one group per IE-pair). Each group sums to 1.
  std::vector<int> groups;
  // Box: per-component bounds.
  std::vector<double> low, high;

  static ActionSpace simplex(std::vector<int> group_sizes) {
    ActionSpace s;
    s.kind = Kind::Simplex;
    s.groups = std::move(group_sizes);
    return s;
  }

  static ActionSpace box(std::vector<double> lo, std::vector<double> hi) {
    ActionSpace s;
    s.kind = Kind::Box;
    s.low = std::move(lo);
    s.high = std::move(hi);
    return s;
  }

  int dim() const {
    if (kind == Kind::Simplex) {
      int d = 0;
      for (int g : groups) d += g;
      return d;
    }
    return static_cast<int>(low.size());
  }

  bool valid(const std::vector<double>& a, double tol = 1e-9) const {
    if (static_cast<int>(a.size()) != dim()) return false;
    if (kind == Kind::Simplex) {
      std::size_t off = 0;
      for (int g : groups) {
        double sum = 0.0;
        for (int j = 0; j < g; ++j) {
          if (a[off + j] < -tol) return false;
          sum += a[off + j];
        }
        if (std::fabs(sum - 1.0) > tol) return false;
        off += g;
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < low[i] - tol || a[i] > high[i] + tol) return false;
    }
    return true;
  }
};

struct EnvironmentSpec {
  int num_agents = 0;
  std::vector<int> obs_dims;           // per agent
  std::vector<ActionSpace> actions;    // per agent
  double gamma = 0.95;
  int horizon = 1;

  int action_dim(int agent) const { return actions[agent].dim(); }

  void validate() const {
    if (num_agents < 1) throw ConfigError("EnvironmentSpec: need at least one agent");
    if (static_cast<int>(obs_dims.size()) != num_agents ||
        static_cast<int>(actions.size()) != num_agents)
      throw ConfigError("EnvironmentSpec: per-agent lists must have num_agents entries");
    for (int d : obs_dims)
      if (d < 1) throw ConfigError("EnvironmentSpec: observation dims must be >= 1");
    for (const auto& a : actions)
      if (a.dim() < 1) throw ConfigError("EnvironmentSpec: action dims must be >= 1");
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("EnvironmentSpec: gamma outside [0,1]");
    if (horizon < 1) throw ConfigError("EnvironmentSpec: horizon must be >= 1");
  }
};

using JointObservation = std::vector<std::vector<double>>;
using JointAction = std::vector<std::vector<double>>;

struct StepResult {
  JointObservation observations;
  std::vector<double> rewards;
  bool terminal = false;
};

// The stored experience tuple (o, a, r, o', terminal).
struct Transition {
  JointObservation obs;
  JointAction actions;
  std::vector<double> rewards;
  JointObservation next_obs;
  bool terminal = false;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual const EnvironmentSpec& spec() const = 0;
  virtual JointObservation reset(std::uint64_t seed) = 0;
  virtual StepResult step(const JointAction& actions) = 0;

 protected:
  // Contract checks shared by implementations: dimension errors always throw;
  // value-range validity is a debug assertion.
  void check_actions(const JointAction& actions) const {
    const EnvironmentSpec& s = spec();
    if (static_cast<int>(actions.size()) != s.num_agents)
      throw ConfigError("Environment::step: expected " + std::to_string(s.num_agents) +
                        " actions, got " + std::to_string(actions.size()));
    for (int i = 0; i < s.num_agents; ++i) {
      if (static_cast<int>(actions[i].size()) != s.action_dim(i))
        throw ConfigError("Environment::step: agent " + std::to_string(i) +
                          " action dim " + std::to_string(actions[i].size()) +
                          " != " + std::to_string(s.action_dim(i)));
      assert(s.actions[i].valid(actions[i], 1e-6) && "invalid action value");
    }
  }

  void check_observations(const JointObservation& obs) const {
    const EnvironmentSpec& s = spec();
    assert(static_cast<int>(obs.size()) == s.num_agents);
    for (int i = 0; i < s.num_agents; ++i)
      assert(static_cast<int>(obs[i].size()) == s.obs_dims[i] && "observation dim drift");
    (void)obs;
  }
};

// G = sum_t gamma^t r_t
inline double discounted_return(const std::vector<double>& rewards, double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw ConfigError("discounted_return: gamma outside [0,1]");
  double g = 0.0;
  double w = 1.0;
  for (double r : rewards) {
    g += w * r;
    w *= gamma;
  }
  return g;
}

}  // namespace attmarl
