// The learning core: decentralized deterministic actors, centralized critics,
// replay, target networks.
//
// Per update cycle each agent draws a minibatch, takes one critic step on the
// squared TD residual (targets from the target actors/critic, zero bootstrap
// on terminals), then one actor step ascending its critic's Q with the
// gradient chained through the critic's own-action input. Teammate actions in
// the actor step come from the sampled batch by default; the current teammate
// policies can be used instead via TrainConfig.
#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "attmarl/actor.hpp"
#include "attmarl/adam.hpp"
#include "attmarl/critics.hpp"
#include "attmarl/env.hpp"
#include "attmarl/replay.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

enum class Algorithm { AttMaddpg, Maddpg, KheadAblation, DdpgSingle, Wcmp };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::AttMaddpg: return "att-maddpg";
    case Algorithm::Maddpg: return "maddpg";
    case Algorithm::KheadAblation: return "khead-ablation";
    case Algorithm::DdpgSingle: return "ddpg-single";
    case Algorithm::Wcmp: return "wcmp";
  }
  return "?";
}

inline Algorithm algorithm_from_string(const std::string& s) {
  if (s == "att-maddpg") return Algorithm::AttMaddpg;
  if (s == "maddpg") return Algorithm::Maddpg;
  if (s == "khead-ablation") return Algorithm::KheadAblation;
  if (s == "ddpg-single") return Algorithm::DdpgSingle;
  if (s == "wcmp") return Algorithm::Wcmp;
  throw ConfigError("unknown algorithm: " + s);
}

struct TrainConfig {
  double gamma = 0.95;
  std::size_t buffer_capacity = 100'000;
  std::size_t batch_size = 64;
  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  enum class TargetMode { Hard, Soft };
  TargetMode target_mode = TargetMode::Hard;
  std::size_t target_interval = 100;  // hard copy every C update cycles
  double tau = 0.01;                  // soft blend rate
  double sigma_init = 0.3;
  double sigma_decay = 0.999;  // per episode
  double sigma_min = 0.0;
  int episodes = 1000;
  int update_every = 1;          // env steps between update cycles
  std::size_t warmup = 0;        // min transitions before updates (0: batch_size)
  std::vector<std::size_t> hidden{64, 64};
  std::vector<std::size_t> encoder_hidden{64};
  int head_dim = 32;  // vector-valued Q heads
  int num_heads = 4;
  bool teammates_from_policy = false;

  void validate() const {
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("TrainConfig: gamma outside [0,1]");
    if (target_mode == TargetMode::Soft && (tau <= 0.0 || tau > 1.0))
      throw ConfigError("TrainConfig: tau must be in (0,1]");
    if (target_mode == TargetMode::Hard && target_interval < 1)
      throw ConfigError("TrainConfig: target_interval must be >= 1");
    if (batch_size < 1 || buffer_capacity < batch_size)
      throw ConfigError("TrainConfig: need buffer_capacity >= batch_size >= 1");
    if (num_heads < 1) throw ConfigError("TrainConfig: num_heads must be >= 1");
    if (head_dim < 1) throw ConfigError("TrainConfig: head_dim must be >= 1");
    if (update_every < 1) throw ConfigError("TrainConfig: update_every must be >= 1");
    if (episodes < 0) throw ConfigError("TrainConfig: episodes must be >= 0");
    if (sigma_init < 0.0 || sigma_min < 0.0) throw ConfigError("TrainConfig: sigma must be >= 0");
  }

  std::size_t effective_warmup() const { return warmup == 0 ? batch_size : warmup; }
};

struct EpisodeMetrics {
  int episode = 0;
  std::vector<double> reward_mean;  // per agent, mean over steps
  std::vector<double> critic_loss;  // per agent, mean over update cycles (0 if none)
  std::vector<double> actor_objective;
  int updates = 0;
  double sigma = 0.0;
  double wall_ms = 0.0;  // diagnostics only; never serialized into metrics files
};

struct MarlAgent {
  Actor actor;
  Actor actor_target;
  std::unique_ptr<Critic> critic;
  std::unique_ptr<Critic> critic_target;
  AdamState actor_opt;
  AdamState critic_opt;
};

class Trainer {
 public:
  Trainer(const EnvironmentSpec& spec, Algorithm algo, TrainConfig cfg, std::uint64_t seed)
      : spec_(spec),
        algo_(algo),
        cfg_(std::move(cfg)),
        seed_(seed),
        buffer_(cfg_.buffer_capacity),
        noise_rng_(derive_seed(seed, 2)),
        sample_rng_(derive_seed(seed, 3)) {
    spec_.validate();
    cfg_.validate();
    if (algo_ == Algorithm::Wcmp)
      throw ConfigError("Trainer: wcmp is a static policy, not a trainable algorithm");
    Rng init(derive_seed(seed, 1));
    for (int i = 0; i < spec_.num_agents; ++i) {
      MarlAgent agent;
      agent.actor = Actor(spec_.obs_dims[i], spec_.actions[i], cfg_.hidden, init);
      agent.actor_target = agent.actor;
      agent.critic = make_critic(i, init);
      agent.critic_target = agent.critic->clone();
      agent.actor_opt = AdamState(agent.actor.parameter_count(),
                                  AdamConfig{cfg_.actor_lr, 0.9, 0.999, 1e-8});
      agent.critic_opt = AdamState(agent.critic->parameter_count(),
                                   AdamConfig{cfg_.critic_lr, 0.9, 0.999, 1e-8});
      agents_.push_back(std::move(agent));
    }
  }

  const EnvironmentSpec& spec() const { return spec_; }
  Algorithm algorithm() const { return algo_; }
  const TrainConfig& config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }
  ReplayBuffer& buffer() { return buffer_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  MarlAgent& agent(int i) { return agents_[static_cast<std::size_t>(i)]; }
  const MarlAgent& agent(int i) const { return agents_[static_cast<std::size_t>(i)]; }
  std::size_t update_cycles() const { return update_cycles_; }
  int episodes_done() const { return episode_; }

  // --- update rules ------------------------------------------------------

  // One Adam step on agent i's critic over the given batch; returns the
  // pre-step loss (mean squared TD residual).
  double critic_update(int i, const std::vector<std::size_t>& indices) {
    MarlAgent& ag = agents_[static_cast<std::size_t>(i)];
    const double inv_b = 1.0 / static_cast<double>(indices.size());
    std::vector<double> grads(ag.critic->parameter_count(), 0.0);
    double loss = 0.0;
    for (std::size_t idx : indices) {
      const Transition& tr = buffer_.at(idx);
      std::vector<double> joint_obs = concat(tr.obs);
      std::vector<double> joint_act = concat(tr.actions);
      double y = td_target(i, tr);
      double q = ag.critic->q_value(joint_obs, joint_act);
      double delta = q - y;
      loss += delta * delta * inv_b;
      CriticGrads g = ag.critic->backward(joint_obs, joint_act, 2.0 * delta * inv_b);
      accumulate(grads, g.param_grads);
    }
    if (!std::isfinite(loss))
      throw NumericError("critic_update: non-finite loss for agent " + std::to_string(i));
    std::vector<double> params = ag.critic->params_flat();
    adam_step(ag.critic_opt, params, grads);
    ag.critic->set_params_flat(params);
    return loss;
  }

  // One ascent step on agent i's policy; returns the mean Q estimate.
  double actor_update(int i, const std::vector<std::size_t>& indices) {
    MarlAgent& ag = agents_[static_cast<std::size_t>(i)];
    const double inv_b = 1.0 / static_cast<double>(indices.size());
    std::vector<double> grads(ag.actor.parameter_count(), 0.0);
    double mean_q = 0.0;
    int own_off = own_action_offset(i);
    int own_dim = spec_.action_dim(i);
    for (std::size_t idx : indices) {
      const Transition& tr = buffer_.at(idx);
      std::vector<double> joint_obs = concat(tr.obs);
      std::vector<double> joint_act;
      joint_act.reserve(static_cast<std::size_t>(action_total()));
      for (int j = 0; j < spec_.num_agents; ++j) {
        std::vector<double> aj;
        if (j == i)
          aj = ag.actor.forward(tr.obs[j]);
        else if (cfg_.teammates_from_policy)
          aj = agents_[static_cast<std::size_t>(j)].actor.forward(tr.obs[j]);
        else
          aj = tr.actions[j];
        joint_act.insert(joint_act.end(), aj.begin(), aj.end());
      }
      mean_q += ag.critic->q_value(joint_obs, joint_act) * inv_b;
      CriticGrads g = ag.critic->backward(joint_obs, joint_act, inv_b);
      std::vector<double> g_own(g.action_grad.begin() + own_off,
                                g.action_grad.begin() + own_off + own_dim);
      accumulate(grads, ag.actor.backward(tr.obs[i], g_own));
    }
    if (!std::isfinite(mean_q))
      throw NumericError("actor_update: non-finite objective for agent " + std::to_string(i));
    for (double& g : grads) g = -g;  // Adam minimizes; we ascend Q
    std::vector<double> params = ag.actor.params_flat();
    adam_step(ag.actor_opt, params, grads);
    ag.actor.set_params_flat(params);
    return mean_q;
  }

  // y = r_i + gamma * Q_target(o', a') with a'_j = target_actor_j(o'_j);
  // terminal transitions bootstrap nothing.
  double td_target(int i, const Transition& tr) const {
    if (tr.terminal) return tr.rewards[i];
    const MarlAgent& ag = agents_[static_cast<std::size_t>(i)];
    std::vector<double> next_obs = concat(tr.next_obs);
    std::vector<double> next_act;
    next_act.reserve(static_cast<std::size_t>(action_total()));
    for (int j = 0; j < spec_.num_agents; ++j) {
      std::vector<double> aj =
          agents_[static_cast<std::size_t>(j)].actor_target.forward(tr.next_obs[j]);
      next_act.insert(next_act.end(), aj.begin(), aj.end());
    }
    return tr.rewards[i] + cfg_.gamma * ag.critic_target->q_value(next_obs, next_act);
  }

  // Hard copy every target_interval cycles, or soft blend each cycle.
  void target_update_tick() {
    if (cfg_.target_mode == TrainConfig::TargetMode::Hard) {
      if (update_cycles_ % cfg_.target_interval == 0) hard_target_copy();
    } else {
      for (auto& ag : agents_) {
        soft_blend(ag.actor_target, ag.actor.params_flat());
        soft_blend_critic(*ag.critic_target, ag.critic->params_flat());
      }
    }
  }

  void hard_target_copy() {
    for (auto& ag : agents_) {
      ag.actor_target.set_params_flat(ag.actor.params_flat());
      ag.critic_target->set_params_flat(ag.critic->params_flat());
    }
  }

  // One full update cycle (every agent: critic then actor), with the batches
  // supplied by the caller. Used directly by tests; run_episode samples its
  // own batches.
  std::pair<std::vector<double>, std::vector<double>> update_step(
      const std::vector<std::vector<std::size_t>>& per_agent_indices) {
    std::vector<double> losses, objectives;
    for (int i = 0; i < spec_.num_agents; ++i) {
      losses.push_back(critic_update(i, per_agent_indices[static_cast<std::size_t>(i)]));
      objectives.push_back(actor_update(i, per_agent_indices[static_cast<std::size_t>(i)]));
    }
    update_cycles_ += 1;
    target_update_tick();
    return {std::move(losses), std::move(objectives)};
  }

  // --- data collection -----------------------------------------------------

  JointAction act_all(const JointObservation& obs, double sigma) {
    JointAction actions;
    for (int i = 0; i < spec_.num_agents; ++i)
      actions.push_back(agents_[static_cast<std::size_t>(i)].actor.act(obs[static_cast<std::size_t>(i)], sigma, noise_rng_));
    return actions;
  }

  double sigma_for_episode(int episode) const {
    return std::max(cfg_.sigma_min,
                    cfg_.sigma_init * std::pow(cfg_.sigma_decay, static_cast<double>(episode)));
  }

  EpisodeMetrics run_episode(Environment& env) {
    int episode = episode_;
    double sigma = sigma_for_episode(episode);
    JointObservation obs = env.reset(derive_seed(seed_, 1000 + static_cast<std::uint64_t>(episode)));
    int n = spec_.num_agents;
    EpisodeMetrics m;
    m.episode = episode;
    m.sigma = sigma;
    m.reward_mean.assign(n, 0.0);
    m.critic_loss.assign(n, 0.0);
    m.actor_objective.assign(n, 0.0);
    int steps = 0;
    for (int t = 0; t < spec_.horizon; ++t) {
      JointAction actions = act_all(obs, sigma);
      StepResult res = env.step(actions);
      buffer_.push(Transition{obs, actions, res.rewards, res.observations, res.terminal});
      obs = res.observations;
      for (int i = 0; i < n; ++i) m.reward_mean[i] += res.rewards[i];
      steps += 1;
      env_steps_ += 1;
      if (buffer_.size() >= std::max(cfg_.effective_warmup(), cfg_.batch_size) &&
          env_steps_ % cfg_.update_every == 0) {
        std::vector<std::vector<std::size_t>> idx;
        for (int i = 0; i < n; ++i)
          idx.push_back(buffer_.sample_indices(cfg_.batch_size, sample_rng_));
        auto [losses, objectives] = update_step(idx);
        for (int i = 0; i < n; ++i) {
          m.critic_loss[i] += losses[i];
          m.actor_objective[i] += objectives[i];
        }
        m.updates += 1;
      }
      if (res.terminal) break;
    }
    for (int i = 0; i < n; ++i) {
      m.reward_mean[i] /= std::max(steps, 1);
      if (m.updates > 0) {
        m.critic_loss[i] /= m.updates;
        m.actor_objective[i] /= m.updates;
      }
    }
    episode_ += 1;
    return m;
  }

  // Noise-free rollouts; returns the per-agent mean step reward.
  std::vector<double> evaluate(Environment& env, int episodes, std::uint64_t tag = 0) {
    std::vector<double> mean(spec_.num_agents, 0.0);
    int total_steps = 0;
    for (int e = 0; e < episodes; ++e) {
      JointObservation obs = env.reset(derive_seed(seed_, 5'000'000 + tag * 10'000 + e));
      for (int t = 0; t < spec_.horizon; ++t) {
        JointAction actions;
        for (int i = 0; i < spec_.num_agents; ++i)
          actions.push_back(agents_[static_cast<std::size_t>(i)].actor.forward(obs[static_cast<std::size_t>(i)]));
        StepResult res = env.step(actions);
        obs = res.observations;
        for (int i = 0; i < spec_.num_agents; ++i) mean[i] += res.rewards[i];
        total_steps += 1;
        if (res.terminal) break;
      }
    }
    for (double& v : mean) v /= std::max(total_steps, 1);
    return mean;
  }

  // --- checkpointing -------------------------------------------------------

  // include_buffer: required for bit-exact training continuation; policy-only
  // snapshots (evaluation, attention inspection) can drop it to stay small.
  nlohmann::json to_checkpoint(bool include_buffer = true) const {
    nlohmann::json j;
    j["format"] = "attmarl-checkpoint";
    j["version"] = 1;
    j["algorithm"] = to_string(algo_);
    j["seed"] = seed_;
    j["episode"] = episode_;
    j["env_steps"] = env_steps_;
    j["update_cycles"] = update_cycles_;
    j["rng"] = {{"noise", noise_rng_.save_state()}, {"sample", sample_rng_.save_state()}};
    j["train_config"] = train_config_to_json(cfg_);
    j["env_spec"] = spec_to_json(spec_);
    j["agents"] = nlohmann::json::array();
    for (const auto& ag : agents_) {
      nlohmann::json ja;
      ja["actor"] = detail::net_to_json(ag.actor.net());
      ja["actor_target"] = detail::net_to_json(ag.actor_target.net());
      ja["critic"] = ag.critic->nets_to_json();
      ja["critic_target"] = ag.critic_target->nets_to_json();
      ja["actor_opt"] = adam_to_json(ag.actor_opt);
      ja["critic_opt"] = adam_to_json(ag.critic_opt);
      j["agents"].push_back(std::move(ja));
    }
    if (include_buffer) {
      nlohmann::json jb;
      jb["write_cursor"] = buffer_.write_cursor();
      jb["transitions"] = nlohmann::json::array();
      for (std::size_t i = 0; i < buffer_.size(); ++i) {
        const Transition& t = buffer_.at(i);
        jb["transitions"].push_back({{"obs", t.obs},
                                     {"actions", t.actions},
                                     {"rewards", t.rewards},
                                     {"next_obs", t.next_obs},
                                     {"terminal", t.terminal}});
      }
      j["buffer"] = std::move(jb);
    }
    return j;
  }

  static Trainer from_checkpoint(const nlohmann::json& j) {
    if (j.value("format", "") != "attmarl-checkpoint" || j.value("version", 0) != 1)
      throw ConfigError("checkpoint: bad header");
    EnvironmentSpec spec = spec_from_json(j.at("env_spec"));
    TrainConfig cfg = train_config_from_json(j.at("train_config"));
    Algorithm algo = algorithm_from_string(j.at("algorithm").get<std::string>());
    Trainer tr(spec, algo, cfg, j.at("seed").get<std::uint64_t>());
    tr.episode_ = j.at("episode").get<int>();
    tr.env_steps_ = j.at("env_steps").get<std::size_t>();
    tr.update_cycles_ = j.at("update_cycles").get<std::size_t>();
    tr.noise_rng_.restore_state(j.at("rng").at("noise").get<std::string>());
    tr.sample_rng_.restore_state(j.at("rng").at("sample").get<std::string>());
    const auto& ja = j.at("agents");
    if (ja.size() != tr.agents_.size()) throw ConfigError("checkpoint: agent count mismatch");
    for (std::size_t i = 0; i < tr.agents_.size(); ++i) {
      MarlAgent& ag = tr.agents_[i];
      ag.actor.net() = detail::net_from_json(ja[i].at("actor"));
      ag.actor_target.net() = detail::net_from_json(ja[i].at("actor_target"));
      ag.critic->nets_from_json(ja[i].at("critic"));
      ag.critic_target->nets_from_json(ja[i].at("critic_target"));
      ag.actor_opt = adam_from_json(ja[i].at("actor_opt"), cfg.actor_lr);
      ag.critic_opt = adam_from_json(ja[i].at("critic_opt"), cfg.critic_lr);
    }
    if (j.contains("buffer")) {
      std::vector<Transition> data;
      for (const auto& jt : j.at("buffer").at("transitions")) {
        Transition t;
        t.obs = jt.at("obs").get<JointObservation>();
        t.actions = jt.at("actions").get<JointAction>();
        t.rewards = jt.at("rewards").get<std::vector<double>>();
        t.next_obs = jt.at("next_obs").get<JointObservation>();
        t.terminal = jt.at("terminal").get<bool>();
        data.push_back(std::move(t));
      }
      tr.buffer_.restore(std::move(data), j.at("buffer").at("write_cursor").get<std::size_t>());
    }
    return tr;
  }

  static nlohmann::json spec_to_json(const EnvironmentSpec& s) {
    nlohmann::json j;
    j["num_agents"] = s.num_agents;
    j["obs_dims"] = s.obs_dims;
    j["gamma"] = s.gamma;
    j["horizon"] = s.horizon;
    j["actions"] = nlohmann::json::array();
    for (const auto& a : s.actions) {
      nlohmann::json ja;
      ja["kind"] = a.kind == ActionSpace::Kind::Simplex ? "simplex" : "box";
      ja["groups"] = a.groups;
      ja["low"] = a.low;
      ja["high"] = a.high;
      j["actions"].push_back(std::move(ja));
    }
    return j;
  }

  static EnvironmentSpec spec_from_json(const nlohmann::json& j) {
    EnvironmentSpec s;
    s.num_agents = j.at("num_agents").get<int>();
    s.obs_dims = j.at("obs_dims").get<std::vector<int>>();
    s.gamma = j.at("gamma").get<double>();
    s.horizon = j.at("horizon").get<int>();
    for (const auto& ja : j.at("actions")) {
      ActionSpace a;
      a.kind = ja.at("kind").get<std::string>() == "simplex" ? ActionSpace::Kind::Simplex
                                                             : ActionSpace::Kind::Box;
      a.groups = ja.at("groups").get<std::vector<int>>();
      a.low = ja.at("low").get<std::vector<double>>();
      a.high = ja.at("high").get<std::vector<double>>();
      s.actions.push_back(std::move(a));
    }
    return s;
  }

  static nlohmann::json train_config_to_json(const TrainConfig& c) {
    nlohmann::json j;
    j["gamma"] = c.gamma;
    j["buffer_capacity"] = c.buffer_capacity;
    j["batch_size"] = c.batch_size;
    j["actor_lr"] = c.actor_lr;
    j["critic_lr"] = c.critic_lr;
    j["target_mode"] = c.target_mode == TrainConfig::TargetMode::Hard ? "hard" : "soft";
    j["target_interval"] = c.target_interval;
    j["tau"] = c.tau;
    j["sigma_init"] = c.sigma_init;
    j["sigma_decay"] = c.sigma_decay;
    j["sigma_min"] = c.sigma_min;
    j["episodes"] = c.episodes;
    j["update_every"] = c.update_every;
    j["warmup"] = c.warmup;
    j["hidden"] = c.hidden;
    j["encoder_hidden"] = c.encoder_hidden;
    j["head_dim"] = c.head_dim;
    j["num_heads"] = c.num_heads;
    j["teammates_from_policy"] = c.teammates_from_policy;
    return j;
  }

  static TrainConfig train_config_from_json(const nlohmann::json& j) {
    TrainConfig c;
    c.gamma = j.value("gamma", c.gamma);
    c.buffer_capacity = j.value("buffer_capacity", c.buffer_capacity);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.actor_lr = j.value("actor_lr", c.actor_lr);
    c.critic_lr = j.value("critic_lr", c.critic_lr);
    std::string mode = j.value("target_mode", std::string("hard"));
    if (mode != "hard" && mode != "soft")
      throw ConfigError("train config: target_mode must be 'hard' or 'soft'");
    c.target_mode = mode == "hard" ? TrainConfig::TargetMode::Hard : TrainConfig::TargetMode::Soft;
    c.target_interval = j.value("target_interval", c.target_interval);
    c.tau = j.value("tau", c.tau);
    c.sigma_init = j.value("sigma_init", c.sigma_init);
    c.sigma_decay = j.value("sigma_decay", c.sigma_decay);
    c.sigma_min = j.value("sigma_min", c.sigma_min);
    c.episodes = j.value("episodes", c.episodes);
    c.update_every = j.value("update_every", c.update_every);
    c.warmup = j.value("warmup", c.warmup);
    c.hidden = j.value("hidden", c.hidden);
    c.encoder_hidden = j.value("encoder_hidden", c.encoder_hidden);
    c.head_dim = j.value("head_dim", c.head_dim);
    c.num_heads = j.value("num_heads", c.num_heads);
    c.teammates_from_policy = j.value("teammates_from_policy", c.teammates_from_policy);
    c.validate();
    return c;
  }

  int action_total() const {
    int d = 0;
    for (int i = 0; i < spec_.num_agents; ++i) d += spec_.action_dim(i);
    return d;
  }

  int own_action_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += spec_.action_dim(j);
    return off;
  }

  static std::vector<double> concat(const std::vector<std::vector<double>>& parts) {
    std::vector<double> out;
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    out.reserve(n);
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  }

 private:
  std::unique_ptr<Critic> make_critic(int i, Rng& init) const {
    CriticLayout lay;
    lay.agent_index = i;
    lay.obs_dims = spec_.obs_dims;
    for (int j = 0; j < spec_.num_agents; ++j) lay.action_dims.push_back(spec_.action_dim(j));
    lay.num_heads = cfg_.num_heads;
    lay.head_dim = cfg_.head_dim;
    lay.hidden = cfg_.hidden;
    lay.encoder_hidden = cfg_.encoder_hidden;
    switch (algo_) {
      case Algorithm::AttMaddpg: return std::make_unique<AttentionCritic>(lay, init);
      case Algorithm::KheadAblation: return std::make_unique<KheadAblationCritic>(lay, init);
      case Algorithm::Maddpg: return std::make_unique<CentralMlpCritic>(lay, init);
      case Algorithm::DdpgSingle: return std::make_unique<LocalMlpCritic>(lay, init);
      case Algorithm::Wcmp: break;
    }
    throw ConfigError("make_critic: no critic for this algorithm");
  }

  static void accumulate(std::vector<double>& into, const std::vector<double>& g) {
    for (std::size_t i = 0; i < into.size(); ++i) into[i] += g[i];
  }

  void soft_blend(Actor& target, const std::vector<double>& online) {
    std::vector<double> p = target.params_flat();
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = cfg_.tau * online[i] + (1.0 - cfg_.tau) * p[i];
    target.set_params_flat(p);
  }

  void soft_blend_critic(Critic& target, const std::vector<double>& online) {
    std::vector<double> p = target.params_flat();
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = cfg_.tau * online[i] + (1.0 - cfg_.tau) * p[i];
    target.set_params_flat(p);
  }

  static nlohmann::json adam_to_json(const AdamState& st) {
    return {{"step", st.step}, {"m", st.m}, {"v", st.v}};
  }

  static AdamState adam_from_json(const nlohmann::json& j, double lr) {
    AdamState st;
    st.cfg = AdamConfig{lr, 0.9, 0.999, 1e-8};
    st.step = j.at("step").get<std::size_t>();
    st.m = j.at("m").get<std::vector<double>>();
    st.v = j.at("v").get<std::vector<double>>();
    return st;
  }

  EnvironmentSpec spec_;
  Algorithm algo_;
  TrainConfig cfg_;
  std::uint64_t seed_;
  std::vector<MarlAgent> agents_;
  ReplayBuffer buffer_;
  Rng noise_rng_;
  Rng sample_rng_;
  int episode_ = 0;
  std::size_t env_steps_ = 0;
  std::size_t update_cycles_ = 0;
};

}  // namespace attmarl
