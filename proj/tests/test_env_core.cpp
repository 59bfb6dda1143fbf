#include <catch2/catch_amalgamated.hpp>

#include "attmarl/env.hpp"
#include "attmarl/toy_env.hpp"

using namespace attmarl;

TEST_CASE("discounted_return: gamma 0 keeps the first term") {
  CHECK(discounted_return({1.0, 1.0, 1.0}, 0.0) == 1.0);
}

TEST_CASE("discounted_return: gamma 1 is the plain sum") {
  CHECK(discounted_return({1.0, 1.0, 1.0}, 1.0) == 3.0);
}

TEST_CASE("discounted_return: hand arithmetic") {
  // 1 + 0.5 * 2 = 2.0
  CHECK(discounted_return({1.0, 2.0}, 0.5) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("discounted_return rejects gamma outside [0,1]") {
  CHECK_THROWS_AS(discounted_return({1.0}, 1.5), ConfigError);
}

TEST_CASE("action space: simplex validity over groups") {
  ActionSpace s = ActionSpace::simplex({2, 3});
  CHECK(s.dim() == 5);
  CHECK(s.valid({0.5, 0.5, 0.2, 0.3, 0.5}));
  CHECK_FALSE(s.valid({0.5, 0.6, 0.2, 0.3, 0.5}));
  CHECK_FALSE(s.valid({-0.1, 1.1, 0.2, 0.3, 0.5}));
  CHECK_FALSE(s.valid({0.5, 0.5}));
}

TEST_CASE("action space: box validity") {
  ActionSpace b = ActionSpace::box({-1.0, -1.0}, {1.0, 1.0});
  CHECK(b.dim() == 2);
  CHECK(b.valid({0.3, -0.9}));
  CHECK_FALSE(b.valid({1.2, 0.0}));
}

TEST_CASE("environment spec validation") {
  EnvironmentSpec s;
  s.num_agents = 1;
  s.obs_dims = {2};
  s.actions = {ActionSpace::box({-1.0}, {1.0})};
  s.horizon = 5;
  CHECK_NOTHROW(s.validate());
  s.gamma = 1.5;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("toy env: same seed resets identically, different seeds differ") {
  ToyReachEnv env;
  JointObservation a = env.reset(42);
  JointObservation b = env.reset(42);
  CHECK(a == b);
  JointObservation c = env.reset(43);
  CHECK(a != c);
}

TEST_CASE("toy env: horizon reached means terminal, rewards finite") {
  ToyReachEnv env(4);
  env.reset(1);
  StepResult r;
  for (int t = 0; t < 4; ++t) {
    r = env.step({{0.5}});
    CHECK(std::isfinite(r.rewards[0]));
    CHECK(r.terminal == (t == 3));
  }
}

TEST_CASE("toy env: replaying a seed and action sequence is bit-exact") {
  auto run = [] {
    ToyReachEnv env;
    env.reset(7);
    std::vector<double> rewards;
    for (int t = 0; t < 10; ++t) rewards.push_back(env.step({{-0.25}}).rewards[0]);
    return rewards;
  };
  CHECK(run() == run());
}

TEST_CASE("toy env: wrong action dimension is a contract violation") {
  ToyReachEnv env;
  env.reset(1);
  CHECK_THROWS_AS(env.step({{0.1, 0.2}}), ConfigError);
}

TEST_CASE("toy env: optimal action reaches the target") {
  ToyReachEnv env;
  env.reset(5);
  for (int t = 0; t < 10; ++t) {
    double a = ToyReachEnv::optimal_action(env.position());
    env.step({{a}});
  }
  CHECK(std::fabs(env.position()) < 1e-12);
}
