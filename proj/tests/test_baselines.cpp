#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "vesselkit/baselines.hpp"
#include "vesselkit/synth.hpp"

using namespace vk;

namespace {

Raster bar_image() {
  SceneSpec spec;
  spec.width = 48;
  spec.height = 48;
  spec.primitives.push_back(Vessel{{0, 24}, {47, 24}, 3, 0.8});
  spec.primitives.push_back(Blob{{12, 10}, 7, 0.5});
  Raster img = render(spec).image;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 0.01);
  for (double& v : img.data()) v = 0.1 + 0.8 * v + n(rng);
  return img;
}

Raster affine(const Raster& img, double a, double c) {
  Raster out = img;
  for (double& v : out.data()) v = a * v + c;
  return out;
}

}  // namespace

TEST_CASE("clahe on a constant image is constant") {
  const Raster out = clahe(Raster(32, 32, 0.4));
  const double v = out(0, 0);
  for (double x : out.data()) CHECK(x == v);
}

TEST_CASE("clahe with one tile and no clipping is global equalization") {
  std::mt19937_64 rng(14);
  const Raster img = oracle::random_image8(23, 17, rng);
  ClaheParams p;
  p.tiles_x = 1;
  p.tiles_y = 1;
  p.clip_limit = 1.0;
  const Raster out = clahe(img, p);
  // Oracle: fraction of pixels falling in the same or a lower bin.
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const int b = histogram_bin(img(x, y), p.bins);
      std::size_t below = 0;
      for (double v : img.data())
        if (histogram_bin(v, p.bins) <= b) ++below;
      CHECK(out(x, y) == doctest::Approx(static_cast<double>(below) / img.size()).epsilon(1e-12));
    }
}

TEST_CASE("clahe transfer functions are monotone and the output is bounded") {
  std::mt19937_64 rng(15);
  Raster grad(64, 48, 0.0);
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 64; ++x) grad(x, y) = x / 63.0;
  for (const Raster& img : {grad, oracle::random_image(64, 48, rng)}) {
    ClaheParams p;
    p.tiles_x = 4;
    p.tiles_y = 3;
    const ClaheMapping m = clahe_mapping(img, p);
    for (const auto& t : m.transfer)
      for (std::size_t b = 1; b < t.size(); ++b) CHECK(t[b - 1] <= t[b]);
    const Raster out = clahe(img, p);
    for (double v : out.data()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  const Raster out = clahe(grad, ClaheParams{4, 3, 256, 0.01});
  for (int y = 0; y < 48; ++y)
    for (int x = 1; x < 64; ++x) CHECK(out(x - 1, y) <= out(x, y) + 1e-15);
}

TEST_CASE("clip_histogram conserves mass and respects the ceiling") {
  const std::vector<double> h{40, 0, 0, 2, 0, 0, 0, 30};
  const auto c = clip_histogram(h, 10.0);
  double total = 0.0;
  for (double v : c) {
    total += v;
    CHECK(v <= 10.0 + 1e-12);
  }
  CHECK(total == doctest::Approx(72.0).epsilon(1e-14));
  CHECK_THROWS_AS(clahe(Raster(4, 4, 0.5), ClaheParams{8, 8, 256, 0.01}), std::invalid_argument);
}

TEST_CASE("zana-klein examples") {
  CHECK(zana_klein(Raster(40, 40, 0.3)) == Raster(40, 40, 0.0));

  Raster line(60, 60, 0.0);
  for (int x = 10; x < 50; ++x) line(x, 30) = 1.0;
  const Raster r = zana_klein(line);
  for (int x = 15; x < 45; ++x) CHECK(r(x, 30) > 0.0);

  Raster disk(61, 61, 0.0);
  for (int y = 0; y < 61; ++y)
    for (int x = 0; x < 61; ++x)
      if (std::hypot(x - 30, y - 30) <= 20.0) disk(x, y) = 1.0;
  const Raster s = sum_of_line_tophats(disk, 15, 12);
  for (int y = 20; y <= 40; ++y)
    for (int x = 20; x <= 40; ++x) CHECK(s(x, y) == 0.0);
  const Raster z = zana_klein(disk);
  CHECK(z(30, 30) < 1e-12);
}

TEST_CASE("line detector examples") {
  const Raster flat(30, 30, 0.6);
  for (int l : {1, 5, 15}) CHECK(line_response(flat, l, 15, 12) == Raster(30, 30, 0.0));
  CHECK(line_detector(flat) == Raster(30, 30, 0.0));
  CHECK(standardize(flat) == Raster(30, 30, 0.0));

  Raster bar(40, 40, 0.0);
  for (int y = 19; y <= 21; ++y)
    for (int x = 0; x < 40; ++x) bar(x, y) = 1.0;
  const Raster r = line_response(bar, 15, 15, 12);
  for (int x = 0; x < 40; ++x) CHECK(r(x, 20) > 0.0);
  CHECK(std::abs(r(20, 2)) < 1e-15);

  CHECK(box_mean(bar, 3)(5, 20) == doctest::Approx(1.0));
  CHECK(box_mean(bar, 3)(5, 18) == doctest::Approx(1.0 / 3.0));

  LineDetectorParams bad;
  bad.lengths = {1, 17};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("iuwt decomposition") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const Raster img = oracle::random_image(37, 29, rng);
    const IuwtDecomposition d = iuwt_decompose(img, 4);
    REQUIRE(d.scaling.size() == 5);
    REQUIRE(d.wavelet.size() == 4);
    CHECK(d.scaling.front() == img);
    Raster rec = d.scaling.back();
    for (const auto& w : d.wavelet)
      for (std::size_t i = 0; i < rec.size(); ++i) rec.data()[i] += w.data()[i];
    CHECK(oracle::max_abs_diff(rec, img) < 1e-12);

    const IuwtDecomposition p = iuwt_decompose(img, 4, Padding::periodic());
    for (const auto& c : p.scaling) CHECK(std::abs(mean_value(c) - mean_value(img)) < 1e-10);
  }
  const IuwtDecomposition flat = iuwt_decompose(Raster(20, 20, 0.7), 4);
  for (const auto& w : flat.wavelet) CHECK(w == Raster(20, 20, 0.0));
}

TEST_CASE("iuwt enhancement") {
  CHECK(iuwt_enhance(Raster(32, 32, 0.5)) == Raster(32, 32, 0.0));

  const Raster img = bar_image();
  IuwtParams bright;
  IuwtParams dark;
  dark.polarity = Polarity::Dark;
  CHECK(oracle::max_abs_diff(iuwt_enhance(img, dark), iuwt_enhance(invert(img), bright)) < 1e-12);

  const IuwtDecomposition d = iuwt_decompose(img, 4);
  auto coeff = [&](int x, int y) { return std::abs(d.wavelet[1](x, y) + d.wavelet[2](x, y)); };
  CHECK(coeff(35, 24) >= 5.0 * coeff(35, 40));

  IuwtParams bad;
  bad.summed_levels = {5};
  CHECK_THROWS_AS(iuwt_enhance(img, bad), std::invalid_argument);
}

TEST_CASE("baseline enhancers are invariant to positive affine rescaling") {
  const Raster img = bar_image();
  ZanaKleinParams zk;
  const Raster zr = zana_klein(img, zk);
  const Raster lr = line_detector(img);
  const Raster ir = iuwt_enhance(img);
  for (auto [a, c] : {std::pair{2.5, -0.3}, std::pair{0.2, 0.7}, std::pair{7.0, 3.0}}) {
    const Raster t = affine(img, a, c);
    CHECK(oracle::max_abs_diff(zana_klein(t, zk), zr) < 1e-10);
    CHECK(oracle::max_abs_diff(line_detector(t), lr) < 1e-10);
    CHECK(oracle::max_abs_diff(iuwt_enhance(t), ir) < 1e-10);
  }
}
