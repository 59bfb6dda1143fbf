// Deterministic per-agent policy network. The MLP trunk ends in a linear
// layer; the output head turns it into a valid action: group-wise softmax for
// simplex spaces, scaled tanh for box spaces. Exploration adds Gaussian noise
// to the head output and re-projects.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "attmarl/env.hpp"
#include "attmarl/mlp.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

// Clamp negatives to zero and renormalize each simplex group; a group that
// collapses to all-zero becomes uniform.
inline void project_simplex_groups(std::vector<double>& a, const std::vector<int>& groups) {
  std::size_t off = 0;
  for (int g : groups) {
    double sum = 0.0;
    for (int j = 0; j < g; ++j) {
      double& v = a[off + j];
      v = std::max(v, 0.0);
      sum += v;
    }
    if (sum <= 1e-12) {
      for (int j = 0; j < g; ++j) a[off + j] = 1.0 / g;
    } else {
      for (int j = 0; j < g; ++j) a[off + j] /= sum;
    }
    off += g;
  }
}

inline void project_box(std::vector<double>& a, const std::vector<double>& lo,
                        const std::vector<double>& hi) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::clamp(a[i], lo[i], hi[i]);
}

class Actor {
 public:
  Actor() = default;

  Actor(int obs_dim, ActionSpace space, const std::vector<std::size_t>& hidden, Rng& init)
      : space_(std::move(space)) {
    net_ = MlpNetwork::dense_stack(static_cast<std::size_t>(obs_dim), hidden,
                                   static_cast<std::size_t>(space_.dim()), Activation::Linear);
    net_.init_xavier_uniform(init);
  }

  const ActionSpace& space() const { return space_; }
  const MlpNetwork& net() const { return net_; }
  MlpNetwork& net() { return net_; }

  // mu(o): always a valid action of the agent's space.
  std::vector<double> forward(const std::vector<double>& obs) const {
    std::vector<double> z = net_.forward(obs);
    apply_head(z);
    return z;
  }

  // Gradients of (grad_action . mu(o)) wrt the actor parameters.
  std::vector<double> backward(const std::vector<double>& obs,
                               const std::vector<double>& grad_action) const {
    std::vector<double> z = net_.forward(obs);
    std::vector<double> upstream(z.size());
    if (space_.kind == ActionSpace::Kind::Simplex) {
      // y = softmax(z) per group: dz_i = y_i * (u_i - sum_j u_j y_j)
      std::vector<double> y = z;
      apply_head(y);
      std::size_t off = 0;
      for (int g : space_.groups) {
        double dot = 0.0;
        for (int j = 0; j < g; ++j) dot += grad_action[off + j] * y[off + j];
        for (int j = 0; j < g; ++j)
          upstream[off + j] = y[off + j] * (grad_action[off + j] - dot);
        off += g;
      }
    } else {
      // y = c + s*tanh(z): dz = u * s * (1 - tanh(z)^2)
      for (std::size_t i = 0; i < z.size(); ++i) {
        double t = std::tanh(z[i]);
        double scale = 0.5 * (space_.high[i] - space_.low[i]);
        upstream[i] = grad_action[i] * scale * (1.0 - t * t);
      }
    }
    return net_.backward(obs, upstream).param_grads;
  }

  // a = project(mu(o) + N(0, sigma^2)); sigma = 0 reproduces mu exactly.
  std::vector<double> act(const std::vector<double>& obs, double sigma, Rng& noise) const {
    std::vector<double> a = forward(obs);
    if (sigma > 0.0) {
      for (double& v : a) v += noise.normal(0.0, sigma);
      project(a);
    }
    return a;
  }

  void project(std::vector<double>& a) const {
    if (space_.kind == ActionSpace::Kind::Simplex)
      project_simplex_groups(a, space_.groups);
    else
      project_box(a, space_.low, space_.high);
  }

  std::vector<double> params_flat() const { return net_.params_flat(); }
  void set_params_flat(std::span<const double> p) { net_.set_params_flat(p); }
  std::size_t parameter_count() const { return net_.parameter_count(); }

 private:
  void apply_head(std::vector<double>& z) const {
    if (space_.kind == ActionSpace::Kind::Simplex) {
      std::size_t off = 0;
      for (int g : space_.groups) {
        // group-wise stable softmax
        double m = z[off];
        for (int j = 1; j < g; ++j) m = std::max(m, z[off + j]);
        double sum = 0.0;
        for (int j = 0; j < g; ++j) {
          z[off + j] = std::exp(z[off + j] - m);
          sum += z[off + j];
        }
        for (int j = 0; j < g; ++j) z[off + j] /= sum;
        off += g;
      }
    } else {
      for (std::size_t i = 0; i < z.size(); ++i) {
        double center = 0.5 * (space_.high[i] + space_.low[i]);
        double scale = 0.5 * (space_.high[i] - space_.low[i]);
        z[i] = center + scale * std::tanh(z[i]);
      }
    }
  }

  MlpNetwork net_;
  ActionSpace space_;
};

}  // namespace attmarl
