#include "vesselkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vk {

void validate(const ClaheParams& p) {
  if (p.tiles_x < 1 || p.tiles_y < 1) throw std::invalid_argument("clahe: tile counts must be >= 1");
  if (p.bins < 2) throw std::invalid_argument("clahe: need at least 2 bins");
  if (!(p.clip_limit > 0.0)) throw std::invalid_argument("clahe: clip limit must be positive");
}

int histogram_bin(double value, int bins) noexcept {
  const double v = std::clamp(value, 0.0, 1.0);
  return std::min(bins - 1, static_cast<int>(v * bins));
}

std::vector<double> clip_histogram(std::vector<double> h, double ceiling) {
  const double bins = static_cast<double>(h.size());
  auto clip = [&] {
    double excess = 0.0;
    for (double& v : h) {
      if (v > ceiling) {
        excess += v - ceiling;
        v = ceiling;
      }
    }
    return excess;
  };
  for (int round = 0; round < 5; ++round) {
    const double excess = clip();
    if (excess <= 0.0) return h;
    for (double& v : h) v += excess / bins;
  }
  // Whatever is left goes to the bins still below the ceiling.
  double rest = clip();
  while (rest > 1e-12) {
    std::size_t open_bins = 0;
    for (double v : h) open_bins += v < ceiling;
    if (open_bins == 0) {
      for (double& v : h) v += rest / bins;
      break;
    }
    const double share = rest / static_cast<double>(open_bins);
    for (double& v : h) {
      if (v >= ceiling) continue;
      const double add = std::min(share, ceiling - v);
      v += add;
      rest -= add;
    }
  }
  return h;
}

ClaheMapping clahe_mapping(const Raster& img, const ClaheParams& params) {
  validate(params);
  if (img.width() < params.tiles_x || img.height() < params.tiles_y) {
    throw std::invalid_argument("clahe: image is smaller than the tile grid");
  }
  ClaheMapping m;
  m.tiles_x = params.tiles_x;
  m.tiles_y = params.tiles_y;
  m.bins = params.bins;
  for (int i = 0; i <= m.tiles_x; ++i) m.x_edges.push_back(i * img.width() / m.tiles_x);
  for (int i = 0; i <= m.tiles_y; ++i) m.y_edges.push_back(i * img.height() / m.tiles_y);

  m.transfer.resize(static_cast<std::size_t>(m.tiles_x) * m.tiles_y);
  for (int ty = 0; ty < m.tiles_y; ++ty) {
    for (int tx = 0; tx < m.tiles_x; ++tx) {
      std::vector<double> hist(m.bins, 0.0);
      for (int y = m.y_edges[ty]; y < m.y_edges[ty + 1]; ++y)
        for (int x = m.x_edges[tx]; x < m.x_edges[tx + 1]; ++x)
          hist[histogram_bin(img(x, y), m.bins)] += 1.0;
      const double pixels = static_cast<double>((m.x_edges[tx + 1] - m.x_edges[tx]) *
                                                (m.y_edges[ty + 1] - m.y_edges[ty]));
      hist = clip_histogram(std::move(hist), params.clip_limit * pixels);

      auto& t = m.transfer[static_cast<std::size_t>(ty) * m.tiles_x + tx];
      t.resize(m.bins);
      double cum = 0.0;
      for (int b = 0; b < m.bins; ++b) {
        cum += hist[b];
        t[b] = std::min(1.0, cum / pixels);
      }
    }
  }
  return m;
}

namespace {

struct Blend {
  int lo;
  int hi;
  double w;  // weight of hi
};

// Interpolation between the two tile centres bracketing `pos`; clamped to the
// outermost centre beyond the grid.
Blend blend_for(int pos, const std::vector<int>& edges) {
  const int tiles = static_cast<int>(edges.size()) - 1;
  auto centre = [&](int i) { return 0.5 * (edges[i] + edges[i + 1] - 1); };
  if (pos <= centre(0)) return {0, 0, 0.0};
  if (pos >= centre(tiles - 1)) return {tiles - 1, tiles - 1, 0.0};
  int lo = 0;
  while (lo + 1 < tiles && centre(lo + 1) <= pos) ++lo;
  const int hi = lo + 1;
  return {lo, hi, (pos - centre(lo)) / (centre(hi) - centre(lo))};
}

}  // namespace

Raster clahe(const Raster& img, const ClaheParams& params) {
  const ClaheMapping m = clahe_mapping(img, params);
  std::vector<Blend> bx(img.width());
  std::vector<Blend> by(img.height());
  for (int x = 0; x < img.width(); ++x) bx[x] = blend_for(x, m.x_edges);
  for (int y = 0; y < img.height(); ++y) by[y] = blend_for(y, m.y_edges);

  auto tf = [&](int tx, int ty) -> const std::vector<double>& {
    return m.transfer[static_cast<std::size_t>(ty) * m.tiles_x + tx];
  };

  Raster out(img.width(), img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    const Blend& v = by[y];
    for (int x = 0; x < img.width(); ++x) {
      const Blend& u = bx[x];
      const int b = histogram_bin(img(x, y), m.bins);
      // a + w (b - a) is exact when a == b, so flat regions stay flat.
      const double tl = tf(u.lo, v.lo)[b];
      const double bl = tf(u.lo, v.hi)[b];
      const double top = tl + u.w * (tf(u.hi, v.lo)[b] - tl);
      const double bottom = bl + u.w * (tf(u.hi, v.hi)[b] - bl);
      out(x, y) = std::clamp(top + v.w * (bottom - top), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace vk
