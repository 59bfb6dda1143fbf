// Feed-forward dense networks with analytic, layer-wise backprop.
//
// Parameter flattening order (stable; used for target copies, optimizers and
// checkpoints): for each layer in order, the weight matrix row-major, then
// the bias vector.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "attmarl/rng.hpp"
#include "attmarl/tensor.hpp"

namespace attmarl {

enum class Activation { Linear, Relu, Tanh, Softmax };

inline const char* to_string(Activation a) {
  switch (a) {
    case Activation::Linear: return "linear";
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
    case Activation::Softmax: return "softmax";
  }
  return "?";
}

inline Activation activation_from_string(const std::string& s) {
  if (s == "linear") return Activation::Linear;
  if (s == "relu") return Activation::Relu;
  if (s == "tanh") return Activation::Tanh;
  if (s == "softmax") return Activation::Softmax;
  throw ConfigError("unknown activation: " + s);
}

// Gradients of a scalar function (upstream . output) of one network call.
struct GradientBundle {
  std::vector<double> param_grads;  // same length/order as params_flat()
  std::vector<double> input_grad;   // d(upstream . output) / d input
};

// Numerically stable softmax (max subtraction), in place.
inline void softmax_inplace(std::vector<double>& z) {
  double m = z[0];
  for (double v : z) m = std::max(m, v);
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

struct DenseLayer {
  Tensor weight;  // (out, in), row-major
  Tensor bias;    // (out)
  Activation act = Activation::Linear;

  std::size_t in_dim() const { return weight.cols(); }
  std::size_t out_dim() const { return weight.rows(); }
};

class MlpNetwork {
 public:
  MlpNetwork() = default;

  // dims = [in, h1, ..., out]; acts has dims.size()-1 entries.
  MlpNetwork(const std::vector<std::size_t>& dims,
             const std::vector<Activation>& acts) {
    if (dims.size() < 2 || acts.size() != dims.size() - 1)
      throw ConfigError("MlpNetwork: need dims=[in,...,out] and one activation per layer");
    layers_.reserve(acts.size());
    for (std::size_t l = 0; l < acts.size(); ++l) {
      DenseLayer layer;
      layer.weight = Tensor::zeros({dims[l + 1], dims[l]});
      layer.bias = Tensor::zeros({dims[l + 1]});
      layer.act = acts[l];
      layers_.push_back(std::move(layer));
    }
  }

  // Common shape: hidden relu stack followed by one output layer.
  static MlpNetwork dense_stack(std::size_t in, const std::vector<std::size_t>& hidden,
                                std::size_t out, Activation out_act) {
    std::vector<std::size_t> dims{in};
    std::vector<Activation> acts;
    for (std::size_t h : hidden) {
      dims.push_back(h);
      acts.push_back(Activation::Relu);
    }
    dims.push_back(out);
    acts.push_back(out_act);
    return MlpNetwork(dims, acts);
  }

  std::size_t in_dim() const { return layers_.front().in_dim(); }
  std::size_t out_dim() const { return layers_.back().out_dim(); }
  std::size_t num_layers() const { return layers_.size(); }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.weight.numel() + l.bias.numel();
    return n;
  }

  void init_xavier_uniform(Rng& rng) {
    for (auto& l : layers_) {
      double fan_in = static_cast<double>(l.in_dim());
      double fan_out = static_cast<double>(l.out_dim());
      double limit = std::sqrt(6.0 / std::max(1.0, fan_in + fan_out));
      for (double& w : l.weight.data) w = rng.uniform(-limit, limit);
      for (double& b : l.bias.data) b = 0.0;
    }
  }

  std::vector<double> forward(const std::vector<double>& input) const {
    std::vector<std::vector<double>> pre, post;
    return forward_cached(input, pre, post);
  }

  Tensor forward(const Tensor& input) const {
    return Tensor::vector(forward(input.data));
  }

  // Backprop of the scalar (upstream . output) through the whole stack.
  GradientBundle backward(const std::vector<double>& input,
                          const std::vector<double>& upstream) const {
    if (upstream.size() != out_dim())
      throw ConfigError("MlpNetwork::backward: upstream length " +
                        std::to_string(upstream.size()) + " != out dim " +
                        std::to_string(out_dim()));
    std::vector<std::vector<double>> pre, post;
    forward_cached(input, pre, post);

    GradientBundle g;
    g.param_grads.assign(parameter_count(), 0.0);

    std::vector<double> d_out = upstream;  // gradient wrt layer output
    // offsets of each layer's params in the flat vector
    std::vector<std::size_t> offsets(layers_.size());
    {
      std::size_t off = 0;
      for (std::size_t l = 0; l < layers_.size(); ++l) {
        offsets[l] = off;
        off += layers_[l].weight.numel() + layers_[l].bias.numel();
      }
    }

    for (std::size_t li = layers_.size(); li-- > 0;) {
      const DenseLayer& layer = layers_[li];
      const std::vector<double>& z = pre[li];
      const std::vector<double>& y = post[li];
      const std::vector<double>& x = (li == 0) ? input : post[li - 1];
      std::size_t out = layer.out_dim(), in = layer.in_dim();

      // d_out -> d_z through the activation
      std::vector<double> dz(out);
      switch (layer.act) {
        case Activation::Linear:
          dz = d_out;
          break;
        case Activation::Relu:
          for (std::size_t i = 0; i < out; ++i) dz[i] = z[i] > 0.0 ? d_out[i] : 0.0;
          break;
        case Activation::Tanh:
          for (std::size_t i = 0; i < out; ++i) dz[i] = d_out[i] * (1.0 - y[i] * y[i]);
          break;
        case Activation::Softmax: {
          double dot = 0.0;
          for (std::size_t i = 0; i < out; ++i) dot += d_out[i] * y[i];
          for (std::size_t i = 0; i < out; ++i) dz[i] = y[i] * (d_out[i] - dot);
          break;
        }
      }

      double* gw = g.param_grads.data() + offsets[li];
      double* gb = gw + layer.weight.numel();
      const double* W = layer.weight.data.data();
      std::vector<double> dx(in, 0.0);
      for (std::size_t i = 0; i < out; ++i) {
        double d = dz[i];
        gb[i] += d;
        const double* wrow = W + i * in;
        double* gwrow = gw + i * in;
        for (std::size_t j = 0; j < in; ++j) {
          gwrow[j] += d * x[j];
          dx[j] += d * wrow[j];
        }
      }
      d_out = std::move(dx);
    }
    g.input_grad = std::move(d_out);
    return g;
  }

  std::vector<double> params_flat() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const auto& l : layers_) {
      out.insert(out.end(), l.weight.data.begin(), l.weight.data.end());
      out.insert(out.end(), l.bias.data.begin(), l.bias.data.end());
    }
    return out;
  }

  void set_params_flat(std::span<const double> p) {
    if (p.size() != parameter_count())
      throw ConfigError("MlpNetwork::set_params_flat: size mismatch");
    std::size_t off = 0;
    for (auto& l : layers_) {
      for (double& w : l.weight.data) w = p[off++];
      for (double& b : l.bias.data) b = p[off++];
    }
  }

 private:
  // Returns the final output; fills per-layer pre-activations and outputs.
  std::vector<double> forward_cached(const std::vector<double>& input,
                                     std::vector<std::vector<double>>& pre,
                                     std::vector<std::vector<double>>& post) const {
    if (layers_.empty()) throw ConfigError("MlpNetwork: empty network");
    if (input.size() != in_dim())
      throw ConfigError("MlpNetwork::forward: input length " +
                        std::to_string(input.size()) + " != in dim " +
                        std::to_string(in_dim()));
    pre.clear();
    post.clear();
    pre.reserve(layers_.size());
    post.reserve(layers_.size());
    const std::vector<double>* x = &input;
    for (const auto& layer : layers_) {
      std::size_t out = layer.out_dim(), in = layer.in_dim();
      std::vector<double> z(layer.bias.data);
      const double* W = layer.weight.data.data();
      for (std::size_t i = 0; i < out; ++i) {
        const double* wrow = W + i * in;
        double acc = z[i];
        for (std::size_t j = 0; j < in; ++j) acc += wrow[j] * (*x)[j];
        z[i] = acc;
      }
      pre.push_back(z);
      switch (layer.act) {
        case Activation::Linear:
          break;
        case Activation::Relu:
          for (double& v : z) v = v > 0.0 ? v : 0.0;
          break;
        case Activation::Tanh:
          for (double& v : z) v = std::tanh(v);
          break;
        case Activation::Softmax:
          softmax_inplace(z);
          break;
      }
      post.push_back(std::move(z));
      x = &post.back();
    }
    require_finite(post.back(), "MlpNetwork::forward output");
    return post.back();
  }

  std::vector<DenseLayer> layers_;
};

}  // namespace attmarl
