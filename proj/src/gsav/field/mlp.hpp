#pragma once

#include <random>
#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::field {

struct MlpCache {
  MatX input;                     // D_in x N
  std::vector<MatX> pre_norm;     // per hidden layer: W x + b
  std::vector<MatX> normalized;   // per hidden layer: group-normalized
  std::vector<MatX> activations;  // per hidden layer: post-ReLU
  std::vector<MatX> mean;         // per hidden layer: groups x N
  std::vector<MatX> inv_std;      // per hidden layer: groups x N
};

// Four fully connected layers with group normalization and ReLU between
// them: FC -> GN -> ReLU (x3) -> FC. Samples are columns.
struct Mlp {
  struct Layer {
    MatX W;
    VecX b;
    MatX gW;
    VecX gb;
  };
  struct Norm {
    VecX gamma, beta;
    VecX ggamma, gbeta;
  };

  static constexpr int kLayers = 4;
  static constexpr double kGnEps = 1e-5;

  std::vector<Layer> layers;  // 4
  std::vector<Norm> norms;    // 3
  int groups = 1;

  int in_dim() const { return static_cast<int>(layers.front().W.cols()); }
  int out_dim() const { return static_cast<int>(layers.back().W.rows()); }

  // Hidden layers get uniform(-1/sqrt(fan_in)) init; when zero_last is set the
  // final layer starts at exactly zero so the head's initial output is its
  // bias.
  static Mlp create(int in, int hidden, int out, int groups, std::mt19937_64& rng, bool zero_last);

  MatX forward(const MatX& X, MlpCache* cache) const;
  // Accumulates parameter gradients; returns gradient w.r.t. the input.
  MatX backward(const MlpCache& cache, const MatX& d_out);

  void zero_grad();
  template <typename Fn>
  void visit_params(Fn&& fn) {
    for (size_t l = 0; l < layers.size(); ++l) {
      fn("w" + std::to_string(l), layers[l].W.data(), layers[l].gW.data(),
         static_cast<size_t>(layers[l].W.size()));
      fn("b" + std::to_string(l), layers[l].b.data(), layers[l].gb.data(),
         static_cast<size_t>(layers[l].b.size()));
    }
    for (size_t l = 0; l < norms.size(); ++l) {
      fn("gamma" + std::to_string(l), norms[l].gamma.data(), norms[l].ggamma.data(),
         static_cast<size_t>(norms[l].gamma.size()));
      fn("beta" + std::to_string(l), norms[l].beta.data(), norms[l].gbeta.data(),
         static_cast<size_t>(norms[l].beta.size()));
    }
  }
};

}  // namespace gsav::field
