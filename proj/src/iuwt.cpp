#include "vesselkit/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vesselkit/gaussian.hpp"

namespace vk {

namespace {

// B3-spline taps with (2^(level-1) - 1) zeros between them.
std::vector<double> atrous_kernel(int level) {
  static constexpr double taps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const int step = 1 << (level - 1);
  std::vector<double> k(4 * step + 1, 0.0);
  for (int i = 0; i < 5; ++i) k[i * step] = taps[i];
  return k;
}

}  // namespace

IuwtDecomposition iuwt_decompose(const Raster& img, int levels, const Padding& padding) {
  if (levels < 1) throw std::invalid_argument("iuwt: need at least one level");
  if (levels > 20) throw std::invalid_argument("iuwt: too many levels");
  if (img.empty()) throw std::invalid_argument("iuwt: empty image");
  IuwtDecomposition out;
  out.scaling.push_back(img);
  for (int j = 1; j <= levels; ++j) {
    const auto k = atrous_kernel(j);
    Raster next = convolve_separable(out.scaling.back(), k, k, padding);
    Raster detail = out.scaling.back();
    auto d = detail.data();
    auto n = next.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= n[i];
    out.scaling.push_back(std::move(next));
    out.wavelet.push_back(std::move(detail));
  }
  return out;
}

Raster iuwt_enhance(const Raster& img, const IuwtParams& params) {
  if (params.summed_levels.empty()) throw std::invalid_argument("iuwt: no levels selected");
  for (int j : params.summed_levels) {
    if (j < 1 || j > params.levels) {
      throw std::invalid_argument("iuwt: level " + std::to_string(j) + " outside [1, " +
                                  std::to_string(params.levels) + "]");
    }
  }
  const IuwtDecomposition dec = iuwt_decompose(img, params.levels);
  Raster sum(img.width(), img.height(), 0.0);
  for (int j : params.summed_levels) {
    auto acc = sum.data();
    auto w = dec.wavelet[j - 1].data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w[i];
  }
  const double sign = params.polarity == Polarity::Bright ? 1.0 : -1.0;
  for (double& v : sum.data()) v = std::max(0.0, sign * v);
  return normalize_minmax(sum);
}

}  // namespace vk
