// Particle-world tasks on a bounded 2-D plane: cooperative navigation
// (3 agents cover 3 landmarks) and predator-prey (3 predators chase a
// scripted prey).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "attmarl/env.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

enum class EntityRole { Agent, Landmark, Prey };

struct WorldState {
  std::vector<double> px, py;  // per entity
  std::vector<double> vx, vy;
  std::vector<EntityRole> roles;

  std::size_t size() const { return px.size(); }
};

struct ParticleConfig {
  int n_agents = 3;            // learning agents (predators in predator-prey)
  int n_landmarks = 3;         // landmarks, or prey count (1) in predator-prey
  bool predator_prey = false;
  double plane = 10.0;         // side length; positions live in [0, plane]
  double dt = 0.1;
  double max_speed = 1.0;      // plane units / step
  double collision_radius = 0.3;
  double collision_bonus = 10.0;
  int horizon = 25;
  bool terminate_on_collision = false;  // predator-prey only

  int n_entities() const { return n_agents + n_landmarks; }
};

inline double entity_distance(const WorldState& s, std::size_t a, std::size_t b) {
  double dx = s.px[a] - s.px[b];
  double dy = s.py[a] - s.py[b];
  return std::sqrt(dx * dx + dy * dy);
}

// Apply one kinematics step: clamp each velocity to max speed (by magnitude),
// integrate, clamp positions to the plane. Non-agent entities keep the
// velocity handed in (zero for landmarks; the prey's comes from its script).
inline void particle_step(WorldState& s, const ParticleConfig& cfg,
                          const std::vector<std::pair<double, double>>& velocities) {
  for (std::size_t e = 0; e < s.size(); ++e) {
    double vx = velocities[e].first, vy = velocities[e].second;
    double mag = std::sqrt(vx * vx + vy * vy);
    if (mag > cfg.max_speed && mag > 0.0) {
      vx *= cfg.max_speed / mag;
      vy *= cfg.max_speed / mag;
    }
    if (s.roles[e] == EntityRole::Landmark) {
      vx = 0.0;
      vy = 0.0;
    }
    s.vx[e] = vx;
    s.vy[e] = vy;
    s.px[e] = std::clamp(s.px[e] + vx * cfg.dt, 0.0, cfg.plane);
    s.py[e] = std::clamp(s.py[e] + vy * cfg.dt, 0.0, cfg.plane);
  }
}

// r = -sum over landmarks of (distance to the nearest agent); 0 when covered.
inline double coop_nav_reward(const WorldState& s, const ParticleConfig& cfg) {
  double r = 0.0;
  for (int l = 0; l < cfg.n_landmarks; ++l) {
    std::size_t li = static_cast<std::size_t>(cfg.n_agents + l);
    double nearest = std::numeric_limits<double>::infinity();
    for (int a = 0; a < cfg.n_agents; ++a)
      nearest = std::min(nearest, entity_distance(s, static_cast<std::size_t>(a), li));
    r -= nearest;
  }
  return r;
}

// r = -(distance of the nearest predator to the prey) + bonus on collision.
inline double predator_reward(const WorldState& s, const ParticleConfig& cfg) {
  std::size_t prey = static_cast<std::size_t>(cfg.n_agents);
  double nearest = std::numeric_limits<double>::infinity();
  for (int a = 0; a < cfg.n_agents; ++a)
    nearest = std::min(nearest, entity_distance(s, static_cast<std::size_t>(a), prey));
  double r = -nearest;
  if (nearest < cfg.collision_radius) r += cfg.collision_bonus;
  return r;
}

// Observation of one agent: own velocity, own position, then for every other
// entity (agents in index order, then landmarks/prey) the relative position
// and velocity. 4 + 4*(n_entities-1) dims.
inline std::vector<double> build_particle_observation(const WorldState& s, int agent) {
  std::size_t a = static_cast<std::size_t>(agent);
  std::vector<double> o;
  o.reserve(4 + 4 * (s.size() - 1));
  o.push_back(s.vx[a]);
  o.push_back(s.vy[a]);
  o.push_back(s.px[a]);
  o.push_back(s.py[a]);
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (e == a) continue;
    o.push_back(s.px[e] - s.px[a]);
    o.push_back(s.py[e] - s.py[a]);
    o.push_back(s.vx[e]);
    o.push_back(s.vy[e]);
  }
  return o;
}

class ParticleEnv : public Environment {
 public:
  explicit ParticleEnv(ParticleConfig cfg) : cfg_(cfg) {
    spec_.num_agents = cfg_.n_agents;
    int obs_dim = 4 + 4 * (cfg_.n_entities() - 1);
    for (int a = 0; a < cfg_.n_agents; ++a) {
      spec_.obs_dims.push_back(obs_dim);
      spec_.actions.push_back(ActionSpace::box({-cfg_.max_speed, -cfg_.max_speed},
                                               {cfg_.max_speed, cfg_.max_speed}));
    }
    spec_.horizon = cfg_.horizon;
    spec_.validate();
  }

  const EnvironmentSpec& spec() const override { return spec_; }
  const WorldState& world() const { return state_; }
  const ParticleConfig& config() const { return cfg_; }

  JointObservation reset(std::uint64_t seed) override {
    Rng rng(seed);
    int n = cfg_.n_entities();
    state_ = WorldState{};
    state_.px.resize(n);
    state_.py.resize(n);
    state_.vx.assign(n, 0.0);
    state_.vy.assign(n, 0.0);
    state_.roles.resize(n);
    for (int e = 0; e < n; ++e) {
      state_.px[e] = rng.uniform(0.0, cfg_.plane);
      state_.py[e] = rng.uniform(0.0, cfg_.plane);
      if (e < cfg_.n_agents)
        state_.roles[e] = EntityRole::Agent;
      else
        state_.roles[e] = cfg_.predator_prey ? EntityRole::Prey : EntityRole::Landmark;
    }
    t_ = 0;
    return observations();
  }

  StepResult step(const JointAction& actions) override {
    check_actions(actions);
    std::vector<std::pair<double, double>> vel(cfg_.n_entities(), {0.0, 0.0});
    for (int a = 0; a < cfg_.n_agents; ++a) vel[a] = {actions[a][0], actions[a][1]};
    if (cfg_.predator_prey) vel[cfg_.n_agents] = prey_velocity();
    particle_step(state_, cfg_, vel);
    t_ += 1;

    StepResult res;
    double r = cfg_.predator_prey ? predator_reward(state_, cfg_)
                                  : coop_nav_reward(state_, cfg_);
    res.rewards.assign(cfg_.n_agents, r);
    res.terminal = t_ >= cfg_.horizon;
    if (cfg_.predator_prey && cfg_.terminate_on_collision) {
      std::size_t prey = static_cast<std::size_t>(cfg_.n_agents);
      for (int a = 0; a < cfg_.n_agents; ++a)
        if (entity_distance(state_, a, prey) < cfg_.collision_radius) res.terminal = true;
    }
    res.observations = observations();
    check_observations(res.observations);
    return res;
  }

 private:
  // Scripted prey: flee at max speed directly away from the nearest predator.
  std::pair<double, double> prey_velocity() const {
    std::size_t prey = static_cast<std::size_t>(cfg_.n_agents);
    double nearest = std::numeric_limits<double>::infinity();
    std::size_t who = 0;
    for (int a = 0; a < cfg_.n_agents; ++a) {
      double d = entity_distance(state_, a, prey);
      if (d < nearest) {
        nearest = d;
        who = static_cast<std::size_t>(a);
      }
    }
    double dx = state_.px[prey] - state_.px[who];
    double dy = state_.py[prey] - state_.py[who];
    double mag = std::sqrt(dx * dx + dy * dy);
    if (mag < 1e-12) return {cfg_.max_speed, 0.0};  // coincident: pick a direction
    return {cfg_.max_speed * dx / mag, cfg_.max_speed * dy / mag};
  }

  JointObservation observations() const {
    JointObservation obs;
    for (int a = 0; a < cfg_.n_agents; ++a) obs.push_back(build_particle_observation(state_, a));
    return obs;
  }

  ParticleConfig cfg_;
  EnvironmentSpec spec_;
  WorldState state_;
  int t_ = 0;
};

inline ParticleConfig coop_nav_config() {
  ParticleConfig c;
  c.n_agents = 3;
  c.n_landmarks = 3;
  c.predator_prey = false;
  return c;
}

inline ParticleConfig predator_prey_config() {
  ParticleConfig c;
  c.n_agents = 3;
  c.n_landmarks = 1;  // the prey
  c.predator_prey = true;
  return c;
}

}  // namespace attmarl
