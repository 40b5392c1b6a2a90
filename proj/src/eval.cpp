#include "vesselkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vesselkit/baselines.hpp"

namespace vk {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) noexcept {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

namespace {

void check_shapes(const BinaryMask& truth, const auto& other, const BinaryMask* fov,
                  const char* what) {
  if (!truth.same_shape(other) || (fov != nullptr && !truth.same_shape(*fov))) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth, const BinaryMask* fov) {
  check_shapes(truth, pred, fov, "confusion");
  ConfusionCounts c;
  const std::size_t n = truth.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (fov != nullptr && !fov->at(i)) continue;
    const bool p = pred.at(i);
    const bool t = truth.at(i);
    if (p && t) ++c.tp;
    else if (p) ++c.fp;
    else if (t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

Rates se_sp_acc(const ConfusionCounts& c) {
  return {ratio(c.tp, c.tp + c.fn), ratio(c.tn, c.tn + c.fp), ratio(c.tp + c.tn, c.total())};
}

RocCurve roc_auc(const Raster& score, const BinaryMask& truth, const BinaryMask* fov,
                 int n_thresholds) {
  if (n_thresholds < 2) throw std::invalid_argument("roc_auc: need at least 2 thresholds");
  check_shapes(truth, score, fov, "roc_auc");
  const int top = n_thresholds - 1;
  const double steps = top;

  // pos[k] / neg[k] count pixels whose score clears threshold k/(n-1) but not (k+1)/(n-1).
  std::vector<std::uint64_t> pos(n_thresholds, 0);
  std::vector<std::uint64_t> neg(n_thresholds, 0);
  const auto s = score.data();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (fov != nullptr && !fov->at(i)) continue;
    const double v = s[i];
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("roc_auc: scores must lie in [0,1]");
    int k = std::min(top, static_cast<int>(std::floor(v * steps)));
    while (k < top && v >= (k + 1) / steps) ++k;
    while (k > 0 && v < k / steps) --k;
    (truth.at(i) ? pos : neg)[k]++;
  }

  std::uint64_t p_total = 0;
  std::uint64_t n_total = 0;
  for (int k = 0; k < n_thresholds; ++k) {
    p_total += pos[k];
    n_total += neg[k];
  }
  RocCurve roc;
  if (p_total == 0 || n_total == 0) return roc;

  roc.points.reserve(n_thresholds);
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  double area = 0.0;
  double prev_fpr = 0.0;
  double prev_tpr = 0.0;
  for (int k = top; k >= 0; --k) {
    tp += pos[k];
    fp += neg[k];
    const double tpr = static_cast<double>(tp) / static_cast<double>(p_total);
    const double fpr = static_cast<double>(fp) / static_cast<double>(n_total);
    roc.points.push_back({k / steps, fpr, tpr});
    area += 0.5 * (fpr - prev_fpr) * (tpr + prev_tpr);
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  area += 0.5 * (1.0 - prev_fpr) * (1.0 + prev_tpr);
  roc.auc = area;
  return roc;
}

BinaryMask local_threshold(const Raster& img, int window, double offset) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("local_threshold: window must be odd and >= 3");
  }
  const Raster mean = box_mean(img, window);
  BinaryMask out(img.width(), img.height(), false);
  const auto v = img.data();
  const auto m = mean.data();
  for (std::size_t i = 0; i < v.size(); ++i) out.set(i, v[i] > m[i] - offset);
  return out;
}

std::vector<NoiseCurvePoint> auc_vs_noise_curve(const Scene& scene, const Enhancer& method,
                                                NoiseKind kind, const std::vector<double>& targets,
                                                std::uint64_t seed, int n_thresholds) {
  std::vector<NoiseCurvePoint> rows;
  rows.reserve(targets.size());
  for (double target : targets) {
    NoiseCurvePoint row;
    row.target_db = target;
    Raster input = scene.image;
    if (std::isinf(target) && target > 0) {
      row.achieved_db = std::numeric_limits<double>::infinity();
    } else {
      TargetedNoise noisy = noise_for_target_psnr(scene.image, kind, target, seed);
      row.achieved_db = noisy.achieved_db;
      input = std::move(noisy.image);
    }
    row.auc = roc_auc(method(input), scene.mask, nullptr, n_thresholds).auc;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vk
