// Fixed-capacity ring buffer of joint transitions with seeded uniform
// sampling (with replacement).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "attmarl/env.hpp"
#include "attmarl/rng.hpp"

namespace attmarl {

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ConfigError("ReplayBuffer: capacity must be positive");
    data_.reserve(capacity);
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return data_.size(); }

  void push(Transition t) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(t));
    } else {
      data_[write_] = std::move(t);
    }
    write_ = (write_ + 1) % capacity_;
  }

  const Transition& at(std::size_t i) const { return data_[i]; }
  std::size_t write_cursor() const { return write_; }

  // Checkpoint restore: replace contents and ring cursor wholesale.
  void restore(std::vector<Transition> data, std::size_t write_cursor) {
    if (data.size() > capacity_ || write_cursor >= capacity_)
      throw ConfigError("ReplayBuffer::restore: contents exceed capacity");
    data_ = std::move(data);
    write_ = write_cursor;
  }

  std::vector<std::size_t> sample_indices(std::size_t batch, Rng& rng) const {
    if (size() < batch)
      throw ConfigError("ReplayBuffer: cannot sample " + std::to_string(batch) +
                        " from " + std::to_string(size()) + " stored transitions");
    std::vector<std::size_t> idx(batch);
    for (std::size_t& i : idx) i = rng.below(size());
    return idx;
  }

 private:
  std::size_t capacity_;
  std::size_t write_ = 0;
  std::vector<Transition> data_;
};

}  // namespace attmarl
