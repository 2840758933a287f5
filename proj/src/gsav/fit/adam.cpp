#include "gsav/fit/adam.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::fit {

Adam::Adam(const ParamSet& params, const AdamConfig& config) : cfg_(config) {
  m_.reserve(params.blocks().size());
  v_.reserve(params.blocks().size());
  for (const auto& b : params.blocks()) {
    m_.push_back(VecX::Zero(static_cast<Eigen::Index>(b.size)));
    v_.push_back(VecX::Zero(static_cast<Eigen::Index>(b.size)));
  }
}

double Adam::learning_rate_at(int iteration) const {
  double lr = cfg_.learning_rate;
  if (cfg_.total_iterations > 0) {
    int m1 = static_cast<int>(std::llround(0.75 * cfg_.total_iterations));
    int m2 = static_cast<int>(std::llround(0.90 * cfg_.total_iterations));
    if (iteration >= m1) lr *= 0.1;
    if (iteration >= m2) lr *= 0.1;
  }
  return lr;
}

void Adam::step(ParamSet& params) {
  require(params.blocks().size() == m_.size(), ErrorKind::Dimension,
          "parameter layout changed under the optimizer");
  for (const auto& b : params.blocks())
    for (size_t i = 0; i < b.size; ++i)
      require(std::isfinite(b.grad[i]), ErrorKind::Numeric,
              "step rejected: non-finite gradient in block '" + b.name + "'");

  const double lr = learning_rate_at(iteration_);
  const int t = iteration_ + 1;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg_.beta2, t);
  for (size_t bi = 0; bi < params.blocks().size(); ++bi) {
    const auto& b = params.blocks()[bi];
    VecX& m = m_[bi];
    VecX& v = v_[bi];
    for (size_t i = 0; i < b.size; ++i) {
      double g = b.grad[i];
      m[static_cast<Eigen::Index>(i)] = cfg_.beta1 * m[static_cast<Eigen::Index>(i)] +
                                        (1.0 - cfg_.beta1) * g;
      v[static_cast<Eigen::Index>(i)] = cfg_.beta2 * v[static_cast<Eigen::Index>(i)] +
                                        (1.0 - cfg_.beta2) * g * g;
      double mhat = m[static_cast<Eigen::Index>(i)] / bc1;
      double vhat = v[static_cast<Eigen::Index>(i)] / bc2;
      b.value[i] -= lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
  iteration_++;
}

}  // namespace gsav::fit
