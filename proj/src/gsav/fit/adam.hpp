#pragma once

#include <string>
#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::fit {

struct ParamBlock {
  std::string name;
  double* value = nullptr;
  double* grad = nullptr;
  size_t size = 0;
};

class ParamSet {
 public:
  void add(const std::string& name, double* value, double* grad, size_t size) {
    blocks_.push_back({name, value, grad, size});
  }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  size_t total_size() const {
    size_t n = 0;
    for (const auto& b : blocks_) n += b.size;
    return n;
  }
  void zero_grads() {
    for (auto& b : blocks_)
      for (size_t i = 0; i < b.size; ++i) b.grad[i] = 0.0;
  }

 private:
  std::vector<ParamBlock> blocks_;
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Milestones at 75% and 90% of the total, each dividing the rate by 10.
  int total_iterations = 0;
};

// Bias-corrected Adam over a fixed block layout. Iterations are 0-indexed;
// step() consumes the rate for the current iteration and advances.
class Adam {
 public:
  Adam(const ParamSet& params, const AdamConfig& config);

  double learning_rate_at(int iteration) const;
  int iteration() const { return iteration_; }

  // Throws numeric-error (step rejected) when any gradient is non-finite.
  void step(ParamSet& params);

 private:
  AdamConfig cfg_;
  int iteration_ = 0;
  std::vector<VecX> m_, v_;
};

}  // namespace gsav::fit
