// Centralized critics.
//
// AttentionCritic is the structured critic: K head subnetworks map
// (all observations ++ own action) to vector-valued action-conditional
// Q-values; a teammate encoder maps the joint teammate action to a hidden
// state h; dot-score attention between h and the heads yields weights that
// mix the heads into a contextual vector, and a final linear layer reads out
// the scalar Q. The attention weights track the teammates' joint policy: when
// teammates shift, the weights shift, not the heads.
//
// KheadAblationCritic removes the attention: the head vectors and h are
// concatenated and fed to one linear layer (parameter count stays comparable).
// CentralMlpCritic is the plain-MLP centralized critic; LocalMlpCritic sees
// only the owner's observation/action (independent learners).
#pragma once

#include <cassert>
#include <cmath>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "attmarl/mlp.hpp"
#include "attmarl/rng.hpp"
#include "attmarl/tensor.hpp"

namespace attmarl {

struct AttentionResult {
  std::vector<double> weights;  // softmax over dot scores; sums to 1
  std::vector<double> context;  // weighted average of the head vectors
};

// Dot-score attention, softmax stabilized by max subtraction:
// W_k = exp(h . q_k) / sum_j exp(h . q_j), context = sum_k W_k q_k.
inline AttentionResult attention(const std::vector<double>& h,
                                 const std::vector<std::vector<double>>& heads) {
  if (heads.empty()) throw ConfigError("attention: need at least one head");
  std::size_t dim = h.size();
  std::vector<double> scores(heads.size());
  for (std::size_t k = 0; k < heads.size(); ++k) {
    if (heads[k].size() != dim) throw ConfigError("attention: head/hidden dim mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += h[i] * heads[k][i];
    scores[k] = s;
  }
  softmax_inplace(scores);
  AttentionResult res;
  res.context.assign(dim, 0.0);
  for (std::size_t k = 0; k < heads.size(); ++k)
    for (std::size_t i = 0; i < dim; ++i) res.context[i] += scores[k] * heads[k][i];
  res.weights = std::move(scores);
  return res;
}

struct CriticEval {
  double q = 0.0;
  std::vector<double> attention_weights;           // empty unless attention critic
  std::vector<std::vector<double>> head_values;    // empty unless attention critic
};

struct CriticGrads {
  std::vector<double> param_grads;
  std::vector<double> obs_grad;     // wrt the concatenated joint observation
  std::vector<double> action_grad;  // wrt the concatenated joint action
};

class Critic {
 public:
  virtual ~Critic() = default;
  virtual std::string kind() const = 0;
  virtual CriticEval eval(const std::vector<double>& joint_obs,
                          const std::vector<double>& joint_action) const = 0;
  // Gradients of (upstream * Q).
  virtual CriticGrads backward(const std::vector<double>& joint_obs,
                               const std::vector<double>& joint_action,
                               double upstream) const = 0;
  virtual std::vector<double> params_flat() const = 0;
  virtual void set_params_flat(std::span<const double> p) = 0;
  virtual std::size_t parameter_count() const = 0;
  virtual std::unique_ptr<Critic> clone() const = 0;
  virtual nlohmann::json nets_to_json() const = 0;
  virtual void nets_from_json(const nlohmann::json& j) = 0;

  double q_value(const std::vector<double>& joint_obs,
                 const std::vector<double>& joint_action) const {
    return eval(joint_obs, joint_action).q;
  }
};

// Construction-time description shared by all critic variants.
struct CriticLayout {
  int agent_index = 0;
  std::vector<int> obs_dims;
  std::vector<int> action_dims;
  int num_heads = 4;
  int head_dim = 32;
  std::vector<std::size_t> hidden{64, 64};
  std::vector<std::size_t> encoder_hidden{64};

  int obs_total() const { return std::accumulate(obs_dims.begin(), obs_dims.end(), 0); }
  int action_total() const {
    return std::accumulate(action_dims.begin(), action_dims.end(), 0);
  }
  int own_action_dim() const { return action_dims[agent_index]; }
  int own_action_offset() const {
    int off = 0;
    for (int j = 0; j < agent_index; ++j) off += action_dims[j];
    return off;
  }
  int others_action_dim() const { return action_total() - own_action_dim(); }
};

namespace detail {

inline std::vector<double> concat_head_input(const CriticLayout& lay,
                                             const std::vector<double>& joint_obs,
                                             const std::vector<double>& joint_action) {
  if (static_cast<int>(joint_obs.size()) != lay.obs_total() ||
      static_cast<int>(joint_action.size()) != lay.action_total())
    throw ConfigError("critic: joint observation/action dimension mismatch");
  std::vector<double> x;
  x.reserve(joint_obs.size() + lay.own_action_dim());
  x.insert(x.end(), joint_obs.begin(), joint_obs.end());
  int off = lay.own_action_offset();
  x.insert(x.end(), joint_action.begin() + off,
           joint_action.begin() + off + lay.own_action_dim());
  return x;
}

inline std::vector<double> others_actions(const CriticLayout& lay,
                                          const std::vector<double>& joint_action) {
  std::vector<double> x;
  x.reserve(lay.others_action_dim());
  int off = lay.own_action_offset();
  x.insert(x.end(), joint_action.begin(), joint_action.begin() + off);
  x.insert(x.end(), joint_action.begin() + off + lay.own_action_dim(), joint_action.end());
  return x;
}

// Scatter gradients of (obs ++ own action) and (others' actions) back onto
// the joint vectors.
inline void scatter_grads(const CriticLayout& lay, const std::vector<double>& g_head_input,
                          const std::vector<double>& g_others, CriticGrads& out) {
  out.obs_grad.assign(lay.obs_total(), 0.0);
  out.action_grad.assign(lay.action_total(), 0.0);
  for (int i = 0; i < lay.obs_total(); ++i) out.obs_grad[i] += g_head_input[i];
  int own_off = lay.own_action_offset();
  for (int i = 0; i < lay.own_action_dim(); ++i)
    out.action_grad[own_off + i] += g_head_input[lay.obs_total() + i];
  int cursor = 0;
  for (int i = 0; i < own_off; ++i) out.action_grad[i] += g_others[cursor++];
  for (int i = own_off + lay.own_action_dim(); i < lay.action_total(); ++i)
    out.action_grad[i] += g_others[cursor++];
}

}  // namespace detail

class AttentionCritic : public Critic {
 public:
  AttentionCritic() = default;

  AttentionCritic(CriticLayout layout, Rng& init) : lay_(std::move(layout)) {
    if (lay_.num_heads < 1) throw ConfigError("AttentionCritic: need K >= 1");
    std::size_t head_in = static_cast<std::size_t>(lay_.obs_total() + lay_.own_action_dim());
    for (int k = 0; k < lay_.num_heads; ++k) {
      heads_.push_back(MlpNetwork::dense_stack(head_in, lay_.hidden,
                                               static_cast<std::size_t>(lay_.head_dim),
                                               Activation::Linear));
      heads_.back().init_xavier_uniform(init);
    }
    encoder_ = MlpNetwork::dense_stack(static_cast<std::size_t>(lay_.others_action_dim()),
                                       lay_.encoder_hidden,
                                       static_cast<std::size_t>(lay_.head_dim),
                                       Activation::Linear);
    encoder_.init_xavier_uniform(init);
    output_ = MlpNetwork({static_cast<std::size_t>(lay_.head_dim), 1}, {Activation::Linear});
    output_.init_xavier_uniform(init);
  }

  std::string kind() const override { return "att-maddpg"; }
  const CriticLayout& layout() const { return lay_; }
  int num_heads() const { return lay_.num_heads; }
  const MlpNetwork& output_layer() const { return output_; }

  // Scalar Q of one head alone: the final layer applied to that head's vector
  // (the "merge the last two layers" view used by the inspection tool).
  double head_scalar_q(const std::vector<double>& head_value) const {
    return output_.forward(head_value)[0];
  }

  CriticEval eval(const std::vector<double>& joint_obs,
                  const std::vector<double>& joint_action) const override {
    std::vector<double> x_head = detail::concat_head_input(lay_, joint_obs, joint_action);
    std::vector<double> x_enc = detail::others_actions(lay_, joint_action);

    CriticEval out;
    out.head_values.reserve(heads_.size());
    for (const auto& head : heads_) out.head_values.push_back(head.forward(x_head));
    std::vector<double> h = encoder_.forward(x_enc);
    AttentionResult att = attention(h, out.head_values);
#ifndef NDEBUG
    double wsum = 0.0;
    for (double w : att.weights) {
      assert(w > 0.0 && "attention weight must be strictly positive");
      wsum += w;
    }
    assert(std::fabs(wsum - 1.0) < 1e-9 && "attention weights must sum to 1");
#endif
    out.q = output_.forward(att.context)[0];
    out.attention_weights = std::move(att.weights);
    return out;
  }

  CriticGrads backward(const std::vector<double>& joint_obs,
                       const std::vector<double>& joint_action,
                       double upstream) const override {
    std::vector<double> x_head = detail::concat_head_input(lay_, joint_obs, joint_action);
    std::vector<double> x_enc = detail::others_actions(lay_, joint_action);
    std::size_t K = heads_.size();
    std::size_t H = static_cast<std::size_t>(lay_.head_dim);

    // forward pass, keeping intermediates
    std::vector<std::vector<double>> q(K);
    for (std::size_t k = 0; k < K; ++k) q[k] = heads_[k].forward(x_head);
    std::vector<double> h = encoder_.forward(x_enc);
    AttentionResult att = attention(h, q);
    const std::vector<double>& W = att.weights;

    // final layer
    GradientBundle g_out = output_.backward(att.context, {upstream});
    const std::vector<double>& g_qc = g_out.input_grad;

    // context = sum_k W_k q_k
    std::vector<double> gW(K, 0.0);
    std::vector<std::vector<double>> g_q(K, std::vector<double>(H, 0.0));
    for (std::size_t k = 0; k < K; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < H; ++i) {
        acc += g_qc[i] * q[k][i];
        g_q[k][i] += W[k] * g_qc[i];
      }
      gW[k] = acc;
    }

    // softmax over dot scores
    double dot = 0.0;
    for (std::size_t k = 0; k < K; ++k) dot += gW[k] * W[k];
    std::vector<double> gs(K);
    for (std::size_t k = 0; k < K; ++k) gs[k] = W[k] * (gW[k] - dot);

    // scores s_k = h . q_k
    std::vector<double> g_h(H, 0.0);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t i = 0; i < H; ++i) {
        g_h[i] += gs[k] * q[k][i];
        g_q[k][i] += gs[k] * h[i];
      }

    GradientBundle g_enc = encoder_.backward(x_enc, g_h);

    CriticGrads out;
    out.param_grads.reserve(parameter_count());
    std::vector<double> g_xhead(x_head.size(), 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      GradientBundle g_head = heads_[k].backward(x_head, g_q[k]);
      out.param_grads.insert(out.param_grads.end(), g_head.param_grads.begin(),
                             g_head.param_grads.end());
      for (std::size_t i = 0; i < g_xhead.size(); ++i) g_xhead[i] += g_head.input_grad[i];
    }
    out.param_grads.insert(out.param_grads.end(), g_enc.param_grads.begin(),
                           g_enc.param_grads.end());
    out.param_grads.insert(out.param_grads.end(), g_out.param_grads.begin(),
                           g_out.param_grads.end());
    detail::scatter_grads(lay_, g_xhead, g_enc.input_grad, out);
    return out;
  }

  std::vector<double> params_flat() const override {
    std::vector<double> p;
    p.reserve(parameter_count());
    for (const auto& head : heads_) {
      auto hp = head.params_flat();
      p.insert(p.end(), hp.begin(), hp.end());
    }
    auto ep = encoder_.params_flat();
    p.insert(p.end(), ep.begin(), ep.end());
    auto op = output_.params_flat();
    p.insert(p.end(), op.begin(), op.end());
    return p;
  }

  void set_params_flat(std::span<const double> p) override {
    if (p.size() != parameter_count())
      throw ConfigError("AttentionCritic::set_params_flat: size mismatch");
    std::size_t off = 0;
    for (auto& head : heads_) {
      head.set_params_flat(p.subspan(off, head.parameter_count()));
      off += head.parameter_count();
    }
    encoder_.set_params_flat(p.subspan(off, encoder_.parameter_count()));
    off += encoder_.parameter_count();
    output_.set_params_flat(p.subspan(off, output_.parameter_count()));
  }

  std::size_t parameter_count() const override {
    std::size_t n = encoder_.parameter_count() + output_.parameter_count();
    for (const auto& head : heads_) n += head.parameter_count();
    return n;
  }

  std::unique_ptr<Critic> clone() const override {
    return std::make_unique<AttentionCritic>(*this);
  }

  nlohmann::json nets_to_json() const override;
  void nets_from_json(const nlohmann::json& j) override;

  // test access
  std::vector<MlpNetwork>& heads() { return heads_; }
  const MlpNetwork& encoder() const { return encoder_; }

 private:
  CriticLayout lay_;
  std::vector<MlpNetwork> heads_;
  MlpNetwork encoder_;
  MlpNetwork output_;
};

class KheadAblationCritic : public Critic {
 public:
  KheadAblationCritic() = default;

  KheadAblationCritic(CriticLayout layout, Rng& init) : lay_(std::move(layout)) {
    if (lay_.num_heads < 1) throw ConfigError("KheadAblationCritic: need K >= 1");
    std::size_t head_in = static_cast<std::size_t>(lay_.obs_total() + lay_.own_action_dim());
    for (int k = 0; k < lay_.num_heads; ++k) {
      heads_.push_back(MlpNetwork::dense_stack(head_in, lay_.hidden,
                                               static_cast<std::size_t>(lay_.head_dim),
                                               Activation::Linear));
      heads_.back().init_xavier_uniform(init);
    }
    encoder_ = MlpNetwork::dense_stack(static_cast<std::size_t>(lay_.others_action_dim()),
                                       lay_.encoder_hidden,
                                       static_cast<std::size_t>(lay_.head_dim),
                                       Activation::Linear);
    encoder_.init_xavier_uniform(init);
    output_ = MlpNetwork(
        {static_cast<std::size_t>((lay_.num_heads + 1) * lay_.head_dim), 1},
        {Activation::Linear});
    output_.init_xavier_uniform(init);
  }

  std::string kind() const override { return "khead-ablation"; }
  const CriticLayout& layout() const { return lay_; }

  CriticEval eval(const std::vector<double>& joint_obs,
                  const std::vector<double>& joint_action) const override {
    std::vector<double> x_head = detail::concat_head_input(lay_, joint_obs, joint_action);
    std::vector<double> x_enc = detail::others_actions(lay_, joint_action);
    std::vector<double> merged;
    merged.reserve(static_cast<std::size_t>((lay_.num_heads + 1) * lay_.head_dim));
    for (const auto& head : heads_) {
      std::vector<double> q = head.forward(x_head);
      merged.insert(merged.end(), q.begin(), q.end());
    }
    std::vector<double> h = encoder_.forward(x_enc);
    merged.insert(merged.end(), h.begin(), h.end());
    CriticEval out;  // no attention diagnostics by construction
    out.q = output_.forward(merged)[0];
    return out;
  }

  CriticGrads backward(const std::vector<double>& joint_obs,
                       const std::vector<double>& joint_action,
                       double upstream) const override {
    std::vector<double> x_head = detail::concat_head_input(lay_, joint_obs, joint_action);
    std::vector<double> x_enc = detail::others_actions(lay_, joint_action);
    std::size_t H = static_cast<std::size_t>(lay_.head_dim);
    std::size_t K = heads_.size();

    std::vector<double> merged;
    merged.reserve((K + 1) * H);
    for (const auto& head : heads_) {
      std::vector<double> q = head.forward(x_head);
      merged.insert(merged.end(), q.begin(), q.end());
    }
    std::vector<double> h = encoder_.forward(x_enc);
    merged.insert(merged.end(), h.begin(), h.end());

    GradientBundle g_out = output_.backward(merged, {upstream});

    CriticGrads out;
    out.param_grads.reserve(parameter_count());
    std::vector<double> g_xhead(x_head.size(), 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> gq(g_out.input_grad.begin() + k * H,
                             g_out.input_grad.begin() + (k + 1) * H);
      GradientBundle g_head = heads_[k].backward(x_head, gq);
      out.param_grads.insert(out.param_grads.end(), g_head.param_grads.begin(),
                             g_head.param_grads.end());
      for (std::size_t i = 0; i < g_xhead.size(); ++i) g_xhead[i] += g_head.input_grad[i];
    }
    std::vector<double> gh(g_out.input_grad.begin() + K * H, g_out.input_grad.end());
    GradientBundle g_enc = encoder_.backward(x_enc, gh);
    out.param_grads.insert(out.param_grads.end(), g_enc.param_grads.begin(),
                           g_enc.param_grads.end());
    out.param_grads.insert(out.param_grads.end(), g_out.param_grads.begin(),
                           g_out.param_grads.end());
    detail::scatter_grads(lay_, g_xhead, g_enc.input_grad, out);
    return out;
  }

  std::vector<double> params_flat() const override {
    std::vector<double> p;
    p.reserve(parameter_count());
    for (const auto& head : heads_) {
      auto hp = head.params_flat();
      p.insert(p.end(), hp.begin(), hp.end());
    }
    auto ep = encoder_.params_flat();
    p.insert(p.end(), ep.begin(), ep.end());
    auto op = output_.params_flat();
    p.insert(p.end(), op.begin(), op.end());
    return p;
  }

  void set_params_flat(std::span<const double> p) override {
    if (p.size() != parameter_count())
      throw ConfigError("KheadAblationCritic::set_params_flat: size mismatch");
    std::size_t off = 0;
    for (auto& head : heads_) {
      head.set_params_flat(p.subspan(off, head.parameter_count()));
      off += head.parameter_count();
    }
    encoder_.set_params_flat(p.subspan(off, encoder_.parameter_count()));
    off += encoder_.parameter_count();
    output_.set_params_flat(p.subspan(off, output_.parameter_count()));
  }

  std::size_t parameter_count() const override {
    std::size_t n = encoder_.parameter_count() + output_.parameter_count();
    for (const auto& head : heads_) n += head.parameter_count();
    return n;
  }

  std::unique_ptr<Critic> clone() const override {
    return std::make_unique<KheadAblationCritic>(*this);
  }

  nlohmann::json nets_to_json() const override;
  void nets_from_json(const nlohmann::json& j) override;

  MlpNetwork& output_layer() { return output_; }
  std::vector<MlpNetwork>& heads() { return heads_; }
  MlpNetwork& encoder() { return encoder_; }

 private:
  CriticLayout lay_;
  std::vector<MlpNetwork> heads_;
  MlpNetwork encoder_;
  MlpNetwork output_;
};

// Plain centralized MLP over (all observations ++ all actions), agent order.
class CentralMlpCritic : public Critic {
 public:
  CentralMlpCritic() = default;

  CentralMlpCritic(CriticLayout layout, Rng& init) : lay_(std::move(layout)) {
    net_ = MlpNetwork::dense_stack(
        static_cast<std::size_t>(lay_.obs_total() + lay_.action_total()), lay_.hidden, 1,
        Activation::Linear);
    net_.init_xavier_uniform(init);
  }

  std::string kind() const override { return "maddpg"; }

  CriticEval eval(const std::vector<double>& joint_obs,
                  const std::vector<double>& joint_action) const override {
    CriticEval out;
    out.q = net_.forward(concat(joint_obs, joint_action))[0];
    return out;
  }

  CriticGrads backward(const std::vector<double>& joint_obs,
                       const std::vector<double>& joint_action,
                       double upstream) const override {
    GradientBundle g = net_.backward(concat(joint_obs, joint_action), {upstream});
    CriticGrads out;
    out.param_grads = std::move(g.param_grads);
    out.obs_grad.assign(g.input_grad.begin(), g.input_grad.begin() + lay_.obs_total());
    out.action_grad.assign(g.input_grad.begin() + lay_.obs_total(), g.input_grad.end());
    return out;
  }

  std::vector<double> params_flat() const override { return net_.params_flat(); }
  void set_params_flat(std::span<const double> p) override { net_.set_params_flat(p); }
  std::size_t parameter_count() const override { return net_.parameter_count(); }
  std::unique_ptr<Critic> clone() const override {
    return std::make_unique<CentralMlpCritic>(*this);
  }
  nlohmann::json nets_to_json() const override;
  void nets_from_json(const nlohmann::json& j) override;

 private:
  std::vector<double> concat(const std::vector<double>& obs,
                             const std::vector<double>& act) const {
    if (static_cast<int>(obs.size()) != lay_.obs_total() ||
        static_cast<int>(act.size()) != lay_.action_total())
      throw ConfigError("CentralMlpCritic: joint observation/action dimension mismatch");
    std::vector<double> x;
    x.reserve(obs.size() + act.size());
    x.insert(x.end(), obs.begin(), obs.end());
    x.insert(x.end(), act.begin(), act.end());
    return x;
  }

  CriticLayout lay_;
  MlpNetwork net_;
};

// Decentralized critic over (own observation ++ own action) only.
class LocalMlpCritic : public Critic {
 public:
  LocalMlpCritic() = default;

  LocalMlpCritic(CriticLayout layout, Rng& init) : lay_(std::move(layout)) {
    net_ = MlpNetwork::dense_stack(
        static_cast<std::size_t>(lay_.obs_dims[lay_.agent_index] + lay_.own_action_dim()),
        lay_.hidden, 1, Activation::Linear);
    net_.init_xavier_uniform(init);
  }

  std::string kind() const override { return "ddpg-single"; }

  CriticEval eval(const std::vector<double>& joint_obs,
                  const std::vector<double>& joint_action) const override {
    CriticEval out;
    out.q = net_.forward(local_input(joint_obs, joint_action))[0];
    return out;
  }

  CriticGrads backward(const std::vector<double>& joint_obs,
                       const std::vector<double>& joint_action,
                       double upstream) const override {
    GradientBundle g = net_.backward(local_input(joint_obs, joint_action), {upstream});
    CriticGrads out;
    out.param_grads = std::move(g.param_grads);
    out.obs_grad.assign(lay_.obs_total(), 0.0);
    out.action_grad.assign(lay_.action_total(), 0.0);
    int obs_off = 0;
    for (int j = 0; j < lay_.agent_index; ++j) obs_off += lay_.obs_dims[j];
    int d_obs = lay_.obs_dims[lay_.agent_index];
    for (int i = 0; i < d_obs; ++i) out.obs_grad[obs_off + i] = g.input_grad[i];
    int act_off = lay_.own_action_offset();
    for (int i = 0; i < lay_.own_action_dim(); ++i)
      out.action_grad[act_off + i] = g.input_grad[d_obs + i];
    return out;
  }

  std::vector<double> params_flat() const override { return net_.params_flat(); }
  void set_params_flat(std::span<const double> p) override { net_.set_params_flat(p); }
  std::size_t parameter_count() const override { return net_.parameter_count(); }
  std::unique_ptr<Critic> clone() const override {
    return std::make_unique<LocalMlpCritic>(*this);
  }
  nlohmann::json nets_to_json() const override;
  void nets_from_json(const nlohmann::json& j) override;

 private:
  std::vector<double> local_input(const std::vector<double>& joint_obs,
                                  const std::vector<double>& joint_action) const {
    if (static_cast<int>(joint_obs.size()) != lay_.obs_total() ||
        static_cast<int>(joint_action.size()) != lay_.action_total())
      throw ConfigError("LocalMlpCritic: joint observation/action dimension mismatch");
    std::vector<double> x;
    int obs_off = 0;
    for (int j = 0; j < lay_.agent_index; ++j) obs_off += lay_.obs_dims[j];
    x.insert(x.end(), joint_obs.begin() + obs_off,
             joint_obs.begin() + obs_off + lay_.obs_dims[lay_.agent_index]);
    int act_off = lay_.own_action_offset();
    x.insert(x.end(), joint_action.begin() + act_off,
             joint_action.begin() + act_off + lay_.own_action_dim());
    return x;
  }

  CriticLayout lay_;
  MlpNetwork net_;
};

// --- serialization -----------------------------------------------------

namespace detail {
inline nlohmann::json net_to_json(const MlpNetwork& net) {
  nlohmann::json j;
  j["dims"] = nlohmann::json::array();
  j["acts"] = nlohmann::json::array();
  j["dims"].push_back(net.in_dim());
  for (const auto& l : net.layers()) {
    j["dims"].push_back(l.out_dim());
    j["acts"].push_back(to_string(l.act));
  }
  j["params"] = net.params_flat();
  return j;
}

inline MlpNetwork net_from_json(const nlohmann::json& j) {
  std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
  std::vector<Activation> acts;
  for (const auto& a : j.at("acts")) acts.push_back(activation_from_string(a.get<std::string>()));
  MlpNetwork net(dims, acts);
  std::vector<double> p = j.at("params").get<std::vector<double>>();
  net.set_params_flat(p);
  return net;
}
}  // namespace detail

inline nlohmann::json AttentionCritic::nets_to_json() const {
  nlohmann::json j;
  j["heads"] = nlohmann::json::array();
  for (const auto& head : heads_) j["heads"].push_back(detail::net_to_json(head));
  j["encoder"] = detail::net_to_json(encoder_);
  j["output"] = detail::net_to_json(output_);
  return j;
}

inline void AttentionCritic::nets_from_json(const nlohmann::json& j) {
  heads_.clear();
  for (const auto& h : j.at("heads")) heads_.push_back(detail::net_from_json(h));
  encoder_ = detail::net_from_json(j.at("encoder"));
  output_ = detail::net_from_json(j.at("output"));
}

inline nlohmann::json KheadAblationCritic::nets_to_json() const {
  nlohmann::json j;
  j["heads"] = nlohmann::json::array();
  for (const auto& head : heads_) j["heads"].push_back(detail::net_to_json(head));
  j["encoder"] = detail::net_to_json(encoder_);
  j["output"] = detail::net_to_json(output_);
  return j;
}

inline void KheadAblationCritic::nets_from_json(const nlohmann::json& j) {
  heads_.clear();
  for (const auto& h : j.at("heads")) heads_.push_back(detail::net_from_json(h));
  encoder_ = detail::net_from_json(j.at("encoder"));
  output_ = detail::net_from_json(j.at("output"));
}

inline nlohmann::json CentralMlpCritic::nets_to_json() const {
  return {{"net", detail::net_to_json(net_)}};
}

inline void CentralMlpCritic::nets_from_json(const nlohmann::json& j) {
  net_ = detail::net_from_json(j.at("net"));
}

inline nlohmann::json LocalMlpCritic::nets_to_json() const {
  return {{"net", detail::net_to_json(net_)}};
}

inline void LocalMlpCritic::nets_from_json(const nlohmann::json& j) {
  net_ = detail::net_from_json(j.at("net"));
}

}  // namespace attmarl
