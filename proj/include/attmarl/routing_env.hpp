// DEC-POMDP wrapper around the routing model. Each agent observes its own
// demands, its previous splitting action, and the previous step's utilization
// of the links on its candidate paths (utilizations are one step stale:
// routers cannot see instantaneous global state).
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "attmarl/env.hpp"
#include "attmarl/routing.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

struct RoutingEnvOptions {
  int horizon = 50;
  double exploration_bonus_beta = 0.0;  // off by default
  bool random_trace_offset = false;     // start each episode at a random trace row
};

class RoutingEnv : public Environment {
 public:
  RoutingEnv(Topology topology, FlowTrace trace, RoutingEnvOptions opts = {})
      : topo_(std::move(topology)), trace_(std::move(trace)), opts_(opts) {
    if (trace_.length() < static_cast<std::size_t>(opts_.horizon))
      throw ConfigError("RoutingEnv: trace shorter than horizon");
    int n = topo_.num_agents();
    spec_.num_agents = n;
    spec_.horizon = opts_.horizon;
    for (int a = 0; a < n; ++a) {
      agent_ies_.push_back(topo_.agent_ie_indices(a));
      agent_links_.push_back(topo_.agent_observed_links(a));
      std::vector<int> groups;
      int n_paths = 0;
      for (int ie : agent_ies_[a]) {
        groups.push_back(static_cast<int>(topo_.ie_pairs[ie].paths.size()));
        n_paths += static_cast<int>(topo_.ie_pairs[ie].paths.size());
      }
      spec_.actions.push_back(ActionSpace::simplex(groups));
      spec_.obs_dims.push_back(static_cast<int>(agent_ies_[a].size()) + n_paths +
                               static_cast<int>(agent_links_[a].size()));
    }
    spec_.validate();
    reset(0);
  }

  const EnvironmentSpec& spec() const override { return spec_; }
  const Topology& topology() const { return topo_; }
  const FlowTrace& trace() const { return trace_; }
  const std::vector<double>& utilizations() const { return util_; }
  double current_mlu() const { return max_link_utilization(util_); }

  JointObservation reset(std::uint64_t seed) override {
    t_ = 0;
    offset_ = 0;
    if (opts_.random_trace_offset && trace_.length() > static_cast<std::size_t>(opts_.horizon)) {
      Rng rng(seed);
      offset_ = rng.below(trace_.length() - opts_.horizon + 1);
    }
    // initial "latest action" is the uniform split; initial utilizations 0
    prev_actions_.assign(topo_.num_agents(), RoutingAction{});
    for (const auto& ie : topo_.ie_pairs)
      prev_actions_[ie.agent].emplace_back(ie.paths.size(), 1.0 / ie.paths.size());
    util_.assign(topo_.links.size(), 0.0);
    JointObservation obs = observations();
    check_observations(obs);
    return obs;
  }

  StepResult step(const JointAction& joint) override {
    check_actions(joint);
    std::vector<RoutingAction> actions(spec_.num_agents);
    for (int a = 0; a < spec_.num_agents; ++a) actions[a] = unflatten_action(a, joint[a]);

    util_ = compute_utilizations(topo_, actions, demands_at(t_));
    StepResult res;
    res.rewards = mlu_reward(topo_, util_, opts_.exploration_bonus_beta);
    prev_actions_ = std::move(actions);
    t_ += 1;
    res.terminal = t_ >= opts_.horizon;
    res.observations = observations();
    check_observations(res.observations);
    return res;
  }

  // Observation layout for one agent, in order:
  //   [current demand per controlled IE-pair]
  //   [previous splitting ratios, flattened per IE-pair]
  //   [previous-step utilization of each observed link]
  std::vector<double> observation_for(int agent) const {
    std::vector<double> o;
    for (int ie : agent_ies_[agent]) o.push_back(demands_at(t_)[ie]);
    for (const auto& split : prev_actions_[agent])
      o.insert(o.end(), split.begin(), split.end());
    for (int l : agent_links_[agent]) o.push_back(util_[l]);
    return o;
  }

  RoutingAction unflatten_action(int agent, const std::vector<double>& flat) const {
    RoutingAction out;
    std::size_t off = 0;
    for (int ie : agent_ies_[agent]) {
      std::size_t k = topo_.ie_pairs[ie].paths.size();
      out.emplace_back(flat.begin() + off, flat.begin() + off + k);
      off += k;
    }
    return out;
  }

  const std::vector<double>& demands_at(int t) const {
    return trace_.rows[offset_ + static_cast<std::size_t>(std::min(
        t, static_cast<int>(trace_.length() - offset_ - 1)))];
  }

 private:
  JointObservation observations() const {
    JointObservation obs;
    for (int a = 0; a < spec_.num_agents; ++a) obs.push_back(observation_for(a));
    return obs;
  }

  Topology topo_;
  FlowTrace trace_;
  RoutingEnvOptions opts_;
  EnvironmentSpec spec_;
  std::vector<std::vector<int>> agent_ies_;
  std::vector<std::vector<int>> agent_links_;
  std::vector<RoutingAction> prev_actions_;
  std::vector<double> util_;
  int t_ = 0;
  std::size_t offset_ = 0;
};

}  // namespace attmarl
