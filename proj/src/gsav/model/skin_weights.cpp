#include "gsav/model/skin_weights.hpp"

#include <algorithm>
#include <map>

#include "gsav/core/error.hpp"

namespace gsav::model {

void SkinWeights::normalize_rows() {
  for (Eigen::Index v = 0; v < rows(); ++v) {
    double s = weights.row(v).sum();
    require(s > 0.0, ErrorKind::Format, "skin weight row " + std::to_string(v) + " sums to zero");
    weights.row(v) /= s;
  }
}

void SkinWeights::set_row_capped(Eigen::Index v, std::vector<std::pair<int, double>> entries) {
  std::map<int, double> merged;
  for (const auto& [j, w] : entries)
    if (w != 0.0) merged[j] += w;
  std::vector<std::pair<int, double>> list(merged.begin(), merged.end());
  std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (list.size() > kMaxInfluences) list.resize(kMaxInfluences);
  double s = 0.0;
  for (const auto& [j, w] : list) s += w;
  require(s > 0.0, ErrorKind::Format, "skin weight row " + std::to_string(v) + " sums to zero");
  joints.row(v).setZero();
  weights.row(v).setZero();
  for (size_t k = 0; k < list.size(); ++k) {
    joints(v, static_cast<int>(k)) = list[k].first;
    weights(v, static_cast<int>(k)) = list[k].second / s;
  }
}

}  // namespace gsav::model
