// Central finite-difference gradient checking.
//
// The probe reduces a vector-valued network to the scalar f = probe . output,
// whose analytic gradient is exactly what backward() reports. A plain sum
// would be a degenerate probe for softmax outputs (they always sum to 1), so
// the default probe has distinct components.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "attmarl/mlp.hpp"

namespace attmarl {

inline double relative_error(double a, double b) {
  return std::fabs(a - b) / std::max(1e-8, std::fabs(a) + std::fabs(b));
}

inline std::vector<double> default_probe(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 + 0.25 * static_cast<double>(i);
  return u;
}

// Central-difference gradient of a scalar function of a flat vector.
inline std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double orig = x[i];
    x[i] = orig + h;
    double fp = f(x);
    x[i] = orig - h;
    double fm = f(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline double max_relative_error(const std::vector<double>& analytic,
                                 const std::vector<double>& numeric) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i)
    worst = std::max(worst, relative_error(analytic[i], numeric[i]));
  return worst;
}

// Max relative error between backward() and central finite differences over
// every parameter and every input component. O(P) forward passes.
inline double finite_diff_check(const MlpNetwork& net,
                                const std::vector<double>& input,
                                std::vector<double> probe = {},
                                double h = 1e-5) {
  if (probe.empty()) probe = default_probe(net.out_dim());

  GradientBundle analytic = net.backward(input, probe);

  MlpNetwork scratch = net;
  auto f_params = [&](const std::vector<double>& p) {
    scratch.set_params_flat(p);
    std::vector<double> out = scratch.forward(input);
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += probe[i] * out[i];
    return s;
  };
  std::vector<double> num_p = fd_gradient(f_params, net.params_flat(), h);
  double worst = max_relative_error(analytic.param_grads, num_p);

  auto f_input = [&](const std::vector<double>& x) {
    std::vector<double> out = net.forward(x);
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += probe[i] * out[i];
    return s;
  };
  std::vector<double> num_x = fd_gradient(f_input, input, h);
  worst = std::max(worst, max_relative_error(analytic.input_grad, num_x));
  return worst;
}

}  // namespace attmarl
