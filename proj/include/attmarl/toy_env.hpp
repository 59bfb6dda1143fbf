// Single-agent 1-D target-reaching task. Used as a smoke/benchmark problem:
// its optimal policy is analytic, so learning progress has an exact yardstick.
//
// State: position p in [-2, 2], start p0 ~ U(-1, 1). Action a in [-1, 1]
// moves the agent by gain * a. Reward 1 - |p'| / 2 rises to 1 at the target.
#pragma once

#include <algorithm>
#include <cmath>

#include "attmarl/env.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

class ToyReachEnv : public Environment {
 public:
  static constexpr double kGain = 0.4;
  static constexpr double kRange = 2.0;

  explicit ToyReachEnv(int horizon = 10) {
    spec_.num_agents = 1;
    spec_.obs_dims = {1};
    spec_.actions = {ActionSpace::box({-1.0}, {1.0})};
    spec_.gamma = 0.95;
    spec_.horizon = horizon;
  }

  const EnvironmentSpec& spec() const override { return spec_; }

  JointObservation reset(std::uint64_t seed) override {
    Rng rng(seed);
    pos_ = rng.uniform(-1.0, 1.0);
    t_ = 0;
    return {{pos_}};
  }

  StepResult step(const JointAction& actions) override {
    check_actions(actions);
    double a = std::clamp(actions[0][0], -1.0, 1.0);
    pos_ = std::clamp(pos_ + kGain * a, -kRange, kRange);
    t_ += 1;
    StepResult r;
    r.observations = {{pos_}};
    r.rewards = {1.0 - std::fabs(pos_) / kRange};
    r.terminal = t_ >= spec_.horizon;
    return r;
  }

  // The greedy-optimal action: jump straight at the target.
  static double optimal_action(double pos) {
    return std::clamp(-pos / kGain, -1.0, 1.0);
  }

  double position() const { return pos_; }

 private:
  EnvironmentSpec spec_;
  double pos_ = 0.0;
  int t_ = 0;
};

}  // namespace attmarl
