// Dense row-major tensor of doubles. Deliberately minimal: the networks in
// this library only need vectors and matrices.
#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace attmarl {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> s, std::vector<double> d)
      : shape(std::move(s)), data(std::move(d)) {
    if (numel() != data.size())
      throw ConfigError("Tensor: shape/data size mismatch");
  }

  static Tensor vector(std::vector<double> d) {
    std::size_t n = d.size();
    return Tensor({n}, std::move(d));
  }

  static Tensor zeros(std::vector<std::size_t> s) {
    std::size_t n = 1;
    for (std::size_t dim : s) n *= dim;
    return Tensor(std::move(s), std::vector<double>(n, 0.0));
  }

  std::size_t numel() const {
    std::size_t n = 1;
    for (std::size_t dim : shape) n *= dim;
    return shape.empty() ? 0 : n;
  }

  std::size_t rows() const { return shape.size() == 2 ? shape[0] : 0; }
  std::size_t cols() const { return shape.size() == 2 ? shape[1] : 0; }

  double& at(std::size_t r, std::size_t c) { return data[r * shape[1] + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * shape[1] + c]; }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

inline void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw NumericError(std::string("non-finite value in ") + what);
}

}  // namespace attmarl
