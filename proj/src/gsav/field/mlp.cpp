#include "gsav/field/mlp.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::field {

namespace {

void group_norm_forward(const MatX& z, const VecX& gamma, const VecX& beta, int groups, MatX& y,
                        MatX& xhat, MatX& mean, MatX& inv_std) {
  const Eigen::Index D = z.rows(), N = z.cols();
  const Eigen::Index gs = D / groups;
  y.resize(D, N);
  xhat.resize(D, N);
  mean.resize(groups, N);
  inv_std.resize(groups, N);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (int g = 0; g < groups; ++g) {
      auto zg = z.col(n).segment(g * gs, gs);
      double mu = zg.mean();
      double var = (zg.array() - mu).square().mean();
      double is = 1.0 / std::sqrt(var + Mlp::kGnEps);
      mean(g, n) = mu;
      inv_std(g, n) = is;
      auto xh = xhat.col(n).segment(g * gs, gs);
      xh = (zg.array() - mu) * is;
      y.col(n).segment(g * gs, gs) =
          xh.array() * gamma.segment(g * gs, gs).array() + beta.segment(g * gs, gs).array();
    }
  }
}

void group_norm_backward(const MatX& z, const MatX& xhat, const MatX& mean, const MatX& inv_std,
                         const VecX& gamma, int groups, const MatX& dy, MatX& dz, VecX& dgamma,
                         VecX& dbeta) {
  const Eigen::Index D = z.rows(), N = z.cols();
  const Eigen::Index gs = D / groups;
  dz.resize(D, N);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (int g = 0; g < groups; ++g) {
      auto zg = z.col(n).segment(g * gs, gs);
      auto xh = xhat.col(n).segment(g * gs, gs);
      auto dyg = dy.col(n).segment(g * gs, gs);
      double mu = mean(g, n);
      double is = inv_std(g, n);

      dgamma.segment(g * gs, gs).array() += dyg.array() * xh.array();
      dbeta.segment(g * gs, gs) += dyg;

      VecX dxhat = dyg.array() * gamma.segment(g * gs, gs).array();
      VecX centered = zg.array() - mu;
      double m = static_cast<double>(gs);
      double dvar = (dxhat.array() * centered.array()).sum() * (-0.5) * is * is * is;
      double dmu = -is * dxhat.sum() + dvar * (-2.0 / m) * centered.sum();
      dz.col(n).segment(g * gs, gs) =
          dxhat.array() * is + dvar * 2.0 / m * centered.array() + dmu / m;
    }
  }
}

}  // namespace

Mlp Mlp::create(int in, int hidden, int out, int groups, std::mt19937_64& rng, bool zero_last) {
  require(hidden % groups == 0, ErrorKind::Dimension, "group count must divide hidden width");
  Mlp mlp;
  mlp.groups = groups;
  int widths[kLayers + 1] = {in, hidden, hidden, hidden, out};
  for (int l = 0; l < kLayers; ++l) {
    Layer layer;
    layer.W.resize(widths[l + 1], widths[l]);
    layer.b.resize(widths[l + 1]);
    double k = 1.0 / std::sqrt(static_cast<double>(widths[l]));
    std::uniform_real_distribution<double> dist(-k, k);
    if (l == kLayers - 1 && zero_last) {
      layer.W.setZero();
      layer.b.setZero();
    } else {
      for (Eigen::Index i = 0; i < layer.W.size(); ++i) layer.W.data()[i] = dist(rng);
      for (Eigen::Index i = 0; i < layer.b.size(); ++i) layer.b[i] = dist(rng);
    }
    layer.gW = MatX::Zero(layer.W.rows(), layer.W.cols());
    layer.gb = VecX::Zero(layer.b.size());
    mlp.layers.push_back(std::move(layer));
    if (l < kLayers - 1) {
      Norm norm;
      norm.gamma = VecX::Ones(hidden);
      norm.beta = VecX::Zero(hidden);
      norm.ggamma = VecX::Zero(hidden);
      norm.gbeta = VecX::Zero(hidden);
      mlp.norms.push_back(std::move(norm));
    }
  }
  return mlp;
}

MatX Mlp::forward(const MatX& X, MlpCache* cache) const {
  require(X.rows() == in_dim(), ErrorKind::Dimension,
          "mlp input width " + std::to_string(X.rows()) + " does not match declared " +
              std::to_string(in_dim()));
  if (cache) {
    cache->input = X;
    cache->pre_norm.clear();
    cache->normalized.clear();
    cache->activations.clear();
    cache->mean.clear();
    cache->inv_std.clear();
  }
  MatX a = X;
  for (int l = 0; l < kLayers; ++l) {
    MatX z = (layers[static_cast<size_t>(l)].W * a).colwise() + layers[static_cast<size_t>(l)].b;
    if (l == kLayers - 1) return z;
    MatX y, xhat, mean, inv_std;
    group_norm_forward(z, norms[static_cast<size_t>(l)].gamma, norms[static_cast<size_t>(l)].beta,
                       groups, y, xhat, mean, inv_std);
    a = y.cwiseMax(0.0);
    if (cache) {
      cache->pre_norm.push_back(std::move(z));
      cache->normalized.push_back(std::move(xhat));
      cache->mean.push_back(std::move(mean));
      cache->inv_std.push_back(std::move(inv_std));
      cache->activations.push_back(a);
    }
  }
  return a;  // unreachable
}

MatX Mlp::backward(const MlpCache& cache, const MatX& d_out) {
  require(cache.activations.size() == kLayers - 1 && cache.input.cols() == d_out.cols(),
          ErrorKind::Dimension, "stale mlp cache");
  // Final layer.
  const MatX& a_last = cache.activations.back();
  layers.back().gW += d_out * a_last.transpose();
  layers.back().gb += d_out.rowwise().sum();
  MatX da = layers.back().W.transpose() * d_out;

  for (int l = kLayers - 2; l >= 0; --l) {
    const MatX& act = cache.activations[static_cast<size_t>(l)];
    MatX dy = (act.array() > 0.0).select(da, MatX::Zero(da.rows(), da.cols()));
    MatX dz;
    group_norm_backward(cache.pre_norm[static_cast<size_t>(l)],
                        cache.normalized[static_cast<size_t>(l)],
                        cache.mean[static_cast<size_t>(l)], cache.inv_std[static_cast<size_t>(l)],
                        norms[static_cast<size_t>(l)].gamma, groups, dy, dz,
                        norms[static_cast<size_t>(l)].ggamma, norms[static_cast<size_t>(l)].gbeta);
    const MatX& in = l == 0 ? cache.input : cache.activations[static_cast<size_t>(l - 1)];
    layers[static_cast<size_t>(l)].gW += dz * in.transpose();
    layers[static_cast<size_t>(l)].gb += dz.rowwise().sum();
    da = layers[static_cast<size_t>(l)].W.transpose() * dz;
  }
  return da;
}

void Mlp::zero_grad() {
  for (auto& l : layers) {
    l.gW.setZero();
    l.gb.setZero();
  }
  for (auto& n : norms) {
    n.ggamma.setZero();
    n.gbeta.setZero();
  }
}

}  // namespace gsav::field
