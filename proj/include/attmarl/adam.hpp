// Adam optimizer over a flat parameter vector.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "attmarl/tensor.hpp"

namespace attmarl {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::size_t step = 0;
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment

  AdamState() = default;
  AdamState(std::size_t n, AdamConfig c)
      : cfg(c), m(n, 0.0), v(n, 0.0) {}
};

// One Adam update, in place. Throws NumericError on non-finite gradients.
inline void adam_step(AdamState& state, std::vector<double>& params,
                      const std::vector<double>& grads) {
  if (params.size() != state.m.size() || grads.size() != state.m.size())
    throw ConfigError("adam_step: length mismatch (params " +
                      std::to_string(params.size()) + ", grads " +
                      std::to_string(grads.size()) + ", state " +
                      std::to_string(state.m.size()) + ")");
  for (double g : grads)
    if (!std::isfinite(g))
      throw NumericError("adam_step: non-finite gradient at step " +
                         std::to_string(state.step + 1));

  state.step += 1;
  double b1 = state.cfg.beta1, b2 = state.cfg.beta2;
  double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * grads[i];
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * grads[i] * grads[i];
    double mhat = state.m[i] / bc1;
    double vhat = state.v[i] / bc2;
    params[i] -= state.cfg.lr * mhat / (std::sqrt(vhat) + state.cfg.eps);
  }
}

}  // namespace attmarl
