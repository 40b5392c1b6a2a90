#include "vesselkit/bowler_hat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "vesselkit/morph.hpp"

namespace vk {

void validate(const BowlerHatParams& p) {
  if (p.max_diameter < 2) {
    throw std::invalid_argument("bowler-hat: max diameter must be >= 2, got " +
                                std::to_string(p.max_diameter));
  }
  if (p.orientations < 2) {
    throw std::invalid_argument("bowler-hat: need at least 2 orientations, got " +
                                std::to_string(p.orientations));
  }
  if (p.diameter_step < 1 || p.diameter_step > p.max_diameter) {
    throw std::invalid_argument("bowler-hat: diameter step must lie in [1, max diameter]");
  }
  if (p.threads < 0) throw std::invalid_argument("bowler-hat: thread count must be >= 0");
}

std::vector<int> stack_diameters(const BowlerHatParams& params) {
  validate(params);
  std::vector<int> ds;
  for (int d = 1; d <= params.max_diameter; d += params.diameter_step) ds.push_back(d);
  return ds;
}

std::vector<double> line_angles(int orientations) {
  if (orientations < 1) throw std::invalid_argument("line_angles: orientations must be >= 1");
  std::vector<double> angles(orientations);
  for (int k = 0; k < orientations; ++k) angles[k] = 180.0 * k / orientations;
  return angles;
}

namespace {

void max_into(Raster& acc, const Raster& layer) {
  auto a = acc.data();
  auto b = layer.data();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = b[i] > a[i] ? b[i] : a[i];
}

Raster line_layer(const Raster& img, int d, const std::vector<double>& angles,
                  const Padding& padding) {
  Raster acc = open(img, make_line(d, angles.front()), padding);
  for (std::size_t k = 1; k < angles.size(); ++k) {
    max_into(acc, open(img, make_line(d, angles[k]), padding));
  }
  return acc;
}

// Runs body(i) for i in [0, n) on `threads` workers with a static
// round-robin split.
template <typename Body>
void parallel_for(int n, int threads, Body&& body) {
  if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i, 0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) body(i, t);
    });
  }
}

}  // namespace

ScaleStack disk_stack(const Raster& img, const BowlerHatParams& params) {
  ScaleStack stack;
  stack.diameters = stack_diameters(params);
  stack.layers.resize(stack.diameters.size());
  parallel_for(static_cast<int>(stack.diameters.size()), params.threads, [&](int i, int) {
    stack.layers[i] = open(img, make_disk(stack.diameters[i]), params.padding);
  });
  return stack;
}

ScaleStack line_stack(const Raster& img, const BowlerHatParams& params) {
  ScaleStack stack;
  stack.diameters = stack_diameters(params);
  stack.layers.resize(stack.diameters.size());
  const auto angles = line_angles(params.orientations);
  parallel_for(static_cast<int>(stack.diameters.size()), params.threads, [&](int i, int) {
    stack.layers[i] = line_layer(img, stack.diameters[i], angles, params.padding);
  });
  return stack;
}

Raster bowler_hat_response(const Raster& img, const BowlerHatParams& params) {
  if (img.empty()) throw std::invalid_argument("bowler-hat: empty image");
  const auto diameters = stack_diameters(params);
  const auto angles = line_angles(params.orientations);
  const int n = static_cast<int>(diameters.size());

  int workers = params.threads == 0
                    ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                    : params.threads;
  workers = std::clamp(workers, 1, n);

  // One running maximum per worker; max is exact and order-free, so the
  // reduction below gives the same bits for any worker count.
  std::vector<Raster> partial(workers, Raster(img.width(), img.height(), 0.0));
  parallel_for(n, workers, [&](int i, int worker) {
    const int d = diameters[i];
    const Raster disk = open(img, make_disk(d), params.padding);
    const Raster line = line_layer(img, d, angles, params.padding);
    auto acc = partial[worker].data();
    auto l = line.data();
    auto k = disk.data();
    for (std::size_t p = 0; p < acc.size(); ++p) {
      const double diff = std::abs(l[p] - k[p]);
      acc[p] = diff > acc[p] ? diff : acc[p];
    }
  });

  Raster out = std::move(partial.front());
  for (std::size_t w = 1; w < partial.size(); ++w) max_into(out, partial[w]);
  return out;
}

Raster bowler_hat(const Raster& img, const BowlerHatParams& params) {
  return normalize_minmax(bowler_hat_response(img, params));
}

}  // namespace vk
