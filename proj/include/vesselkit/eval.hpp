#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vesselkit/raster.hpp"
#include "vesselkit/synth.hpp"

namespace vk {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept;
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Counts over pixels where `fov` is set, or over all pixels when fov is null.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth,
                          const BinaryMask* fov = nullptr);

/// Ratios with a zero denominator are left empty rather than reported as 0.
struct Rates {
  std::optional<double> se;
  std::optional<double> sp;
  std::optional<double> acc;
};

Rates se_sp_acc(const ConfusionCounts& c);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // threshold descending
  std::optional<double> auc;     // empty when truth has no positives or no negatives
};

/// Sweeps thresholds k/(n-1), k = n-1..0, predicting `score >= t`, and
/// integrates TPR over FPR with the trapezoid rule between (0,0) and (1,1).
/// Scores must lie in [0,1].
RocCurve roc_auc(const Raster& score, const BinaryMask& truth, const BinaryMask* fov = nullptr,
                 int n_thresholds = 256);

/// Foreground where img > (window mean) - offset; borders replicate.
BinaryMask local_threshold(const Raster& img, int window = 25, double offset = 0.03);

using Enhancer = std::function<Raster(const Raster&)>;

struct NoiseCurvePoint {
  double target_db = 0.0;
  double achieved_db = 0.0;  // +inf for the clean row
  std::optional<double> auc;
};

/// One row per target PSNR. A target of +inf evaluates the clean scene.
std::vector<NoiseCurvePoint> auc_vs_noise_curve(const Scene& scene, const Enhancer& method,
                                                NoiseKind kind, const std::vector<double>& targets,
                                                std::uint64_t seed, int n_thresholds = 256);

}  // namespace vk
