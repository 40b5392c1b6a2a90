#include "vesselkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vesselkit/gaussian.hpp"

namespace vk {

namespace {

constexpr double kEps = 1e-9;

bool inside_canvas(const Point& p, int w, int h) {
  return p.x >= -kEps && p.y >= -kEps && p.x <= w - 1 + kEps && p.y <= h - 1 + kEps;
}

void check_intensity(double v) {
  if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("scene: intensities must lie in (0,1]");
}

void check_width(double w) {
  if (!(w >= 1.0)) throw std::invalid_argument("scene: widths must be >= 1");
}

bool covers(const Vessel& v, double x, double y) {
  const double dx = v.p1.x - v.p0.x;
  const double dy = v.p1.y - v.p0.y;
  const double len = std::hypot(dx, dy);
  const double ux = dx / len;
  const double uy = dy / len;
  const double px = x - v.p0.x;
  const double py = y - v.p0.y;
  const double along = px * ux + py * uy;
  const double across = -px * uy + py * ux;
  return along >= -kEps && along <= len + kEps && std::abs(across) <= 0.5 * v.width + kEps;
}

bool covers(const Blob& b, double x, double y) {
  const double dx = x - b.center.x;
  const double dy = y - b.center.y;
  return dx * dx + dy * dy <= 0.25 * b.diameter * b.diameter + kEps;
}

bool covers(const Cross& c, double x, double y) {
  const double a = c.arm_length;
  const Vessel horizontal{{c.center.x - a, c.center.y}, {c.center.x + a, c.center.y}, c.width, c.intensity};
  const Vessel vertical{{c.center.x, c.center.y - a}, {c.center.x, c.center.y + a}, c.width, c.intensity};
  return covers(horizontal, x, y) || covers(vertical, x, y);
}

double intensity_of(const Primitive& p) {
  return std::visit([](const auto& v) { return v.intensity; }, p);
}

}  // namespace

void validate(const SceneSpec& s) {
  if (s.width < 1 || s.height < 1) throw std::invalid_argument("scene: canvas must be at least 1x1");
  if (s.primitives.empty()) throw std::invalid_argument("scene: no primitives");
  if (!(s.smoothing >= 0.0)) throw std::invalid_argument("scene: smoothing must be >= 0");
  for (const auto& prim : s.primitives) {
    check_intensity(intensity_of(prim));
    if (const auto* v = std::get_if<Vessel>(&prim)) {
      check_width(v->width);
      if (std::hypot(v->p1.x - v->p0.x, v->p1.y - v->p0.y) <= 0.0) {
        throw std::invalid_argument("scene: vessel endpoints coincide");
      }
      if (!inside_canvas(v->p0, s.width, s.height) || !inside_canvas(v->p1, s.width, s.height)) {
        throw std::invalid_argument("scene: vessel endpoint outside the canvas");
      }
    } else if (const auto* b = std::get_if<Blob>(&prim)) {
      check_width(b->diameter);
      if (!inside_canvas(b->center, s.width, s.height)) {
        throw std::invalid_argument("scene: blob centre outside the canvas");
      }
    } else if (const auto* c = std::get_if<Cross>(&prim)) {
      check_width(c->width);
      if (!(c->arm_length > 0.0)) throw std::invalid_argument("scene: cross arm length must be positive");
      const Point lo{c->center.x - c->arm_length, c->center.y - c->arm_length};
      const Point hi{c->center.x + c->arm_length, c->center.y + c->arm_length};
      if (!inside_canvas(lo, s.width, s.height) || !inside_canvas(hi, s.width, s.height)) {
        throw std::invalid_argument("scene: cross arms extend outside the canvas");
      }
    }
  }
}

Scene render(const SceneSpec& spec) {
  validate(spec);
  Scene scene{Raster(spec.width, spec.height, 0.0), BinaryMask(spec.width, spec.height, false)};
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      double value = 0.0;
      bool hit = false;
      for (const auto& prim : spec.primitives) {
        if (std::visit([&](const auto& p) { return covers(p, x, y); }, prim)) {
          hit = true;
          value = std::max(value, intensity_of(prim));
        }
      }
      scene.image(x, y) = value;
      scene.mask.set(x, y, hit);
    }
  }
  if (spec.smoothing > 0.0) {
    scene.image = gaussian_blur(scene.image, spec.smoothing);
    for (double& v : scene.image.data()) v = std::clamp(v, 0.0, 1.0);
  }
  return scene;
}

std::vector<std::string> preset_names() { return {"vessel", "cross", "blob-vessel"}; }

SceneSpec preset_scene(std::string_view name) {
  SceneSpec s;
  if (name == "vessel") {
    // Vertical width-5 vessel through the centre column, edge to edge.
    s.width = 65;
    s.height = 65;
    s.primitives.push_back(Vessel{{32, 0}, {32, 64}, 5.0, 1.0});
  } else if (name == "cross") {
    s.width = 65;
    s.height = 65;
    s.primitives.push_back(Cross{{32, 32}, 28.0, 3.0, 1.0});
  } else if (name == "blob-vessel") {
    s.width = 81;
    s.height = 81;
    s.primitives.push_back(Blob{{30, 40}, 11.0, 1.0});
    s.primitives.push_back(Vessel{{35, 40}, {76, 40}, 3.0, 1.0});
  } else {
    throw std::invalid_argument("unknown scene preset '" + std::string(name) + "'");
  }
  return s;
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "gaussian") return NoiseKind::Gaussian;
  if (name == "speckle") return NoiseKind::Speckle;
  if (name == "saltpepper" || name == "salt-pepper") return NoiseKind::SaltPepper;
  throw std::invalid_argument("unknown noise kind '" + std::string(name) +
                              "' (expected gaussian, speckle or saltpepper)");
}

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::Speckle: return "speckle";
    case NoiseKind::SaltPepper: return "saltpepper";
  }
  return "unknown";
}

namespace {

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> draws(n);
  for (double& d : draws) d = normal(rng);
  return draws;
}

struct SaltPepperPlan {
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> salt;
};

SaltPepperPlan salt_pepper_plan(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SaltPepperPlan plan;
  plan.order.resize(n);
  std::iota(plan.order.begin(), plan.order.end(), std::size_t{0});
  std::shuffle(plan.order.begin(), plan.order.end(), rng);
  std::bernoulli_distribution coin(0.5);
  plan.salt.resize(n);
  for (auto& s : plan.salt) s = coin(rng) ? 1 : 0;
  return plan;
}

Raster salt_pepper(const Raster& img, const SaltPepperPlan& plan, std::size_t count) {
  Raster out = img;
  auto dst = out.data();
  for (std::size_t i = 0; i < count; ++i) dst[plan.order[i]] = plan.salt[i] ? 1.0 : 0.0;
  return out;
}

std::size_t salt_pepper_count(double density, std::size_t n) {
  return static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
}

Raster additive(const Raster& img, const std::vector<double>& draws, double sigma, bool multiplicative) {
  Raster out = img;
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double n = sigma * draws[i];
    dst[i] = std::clamp(multiplicative ? dst[i] * (1.0 + n) : dst[i] + n, 0.0, 1.0);
  }
  return out;
}

std::string db_text(double db) {
  std::ostringstream os;
  os.precision(4);
  os << db << " dB";
  return os.str();
}

}  // namespace

Raster apply_noise(const Raster& img, const NoiseSpec& spec) {
  if (img.empty()) throw std::invalid_argument("apply_noise: empty image");
  if (spec.kind == NoiseKind::SaltPepper) {
    if (!(spec.amount >= 0.0 && spec.amount <= 1.0)) {
      throw std::invalid_argument("apply_noise: salt-and-pepper density must lie in [0,1]");
    }
    if (spec.amount == 0.0) return img;
    return salt_pepper(img, salt_pepper_plan(img.size(), spec.seed),
                       salt_pepper_count(spec.amount, img.size()));
  }
  if (!(spec.amount >= 0.0)) throw std::invalid_argument("apply_noise: sigma must be >= 0");
  if (spec.amount == 0.0) return img;
  return additive(img, normal_draws(img.size(), spec.seed), spec.amount,
                  spec.kind == NoiseKind::Speckle);
}

TargetedNoise noise_for_target_psnr(const Raster& img, NoiseKind kind, double target_db,
                                    std::uint64_t seed) {
  if (img.empty()) throw std::invalid_argument("noise_for_target_psnr: empty image");
  if (!std::isfinite(target_db)) throw std::invalid_argument("noise_for_target_psnr: target must be finite");
  constexpr double kTolerance = 0.1;
  constexpr int kMaxIterations = 60;

  if (kind == NoiseKind::SaltPepper) {
    const auto plan = salt_pepper_plan(img.size(), seed);
    const std::size_t n = img.size();
    auto eval = [&](std::size_t k) { return psnr(img, salt_pepper(img, plan, k)); };

    const double floor_db = eval(n);
    if (floor_db > target_db + kTolerance) {
      throw std::domain_error("target " + db_text(target_db) + " is below the lowest reachable PSNR " +
                              db_text(floor_db));
    }
    // PSNR is non-increasing in the number of corrupted pixels.
    std::size_t lo = 0;
    std::size_t hi = n;
    for (int it = 0; it < kMaxIterations && hi - lo > 1; ++it) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (eval(mid) > target_db) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    double best_db = eval(hi);
    std::size_t best = hi;
    if (lo > 0 && std::abs(eval(lo) - target_db) < std::abs(best_db - target_db)) {
      best = lo;
      best_db = eval(lo);
    }
    if (!(std::abs(best_db - target_db) <= kTolerance)) {
      std::size_t first = 1;
      while (first < n && std::isinf(eval(first))) ++first;
      throw std::domain_error("target " + db_text(target_db) +
                              " is not reachable with salt-and-pepper noise on this image; "
                              "highest reachable PSNR is " + db_text(eval(first)) +
                              ", nearest is " + db_text(best_db));
    }
    const double density = static_cast<double>(best) / static_cast<double>(n);
    return {salt_pepper(img, plan, best), best_db, density};
  }

  const auto draws = normal_draws(img.size(), seed);
  const bool multiplicative = kind == NoiseKind::Speckle;
  auto eval = [&](double sigma) { return psnr(img, additive(img, draws, sigma, multiplicative)); };

  // Grow the bracket until the PSNR falls to the target; past sigma ~ 64
  // clamping has saturated every pixel.
  double hi = 0.05;
  double hi_db = eval(hi);
  while (hi_db > target_db && hi < 64.0) {
    hi *= 2.0;
    hi_db = eval(hi);
  }
  if (hi_db > target_db + kTolerance) {
    throw std::domain_error("target " + db_text(target_db) + " is below the lowest reachable PSNR " +
                            db_text(hi_db) + " for " + noise_kind_name(kind) + " noise");
  }
  if (std::abs(hi_db - target_db) <= kTolerance) {
    return {additive(img, draws, hi, multiplicative), hi_db, hi};
  }
  double lo = 0.0;
  double best = hi;
  double best_db = hi_db;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double db = eval(mid);
    if (std::abs(db - target_db) < std::abs(best_db - target_db)) {
      best = mid;
      best_db = db;
    }
    if (std::abs(db - target_db) <= kTolerance) break;
    if (db > target_db) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(std::abs(best_db - target_db) <= kTolerance)) {
    throw std::domain_error("target " + db_text(target_db) + " is not reachable with " +
                            noise_kind_name(kind) + " noise on this image; nearest is " +
                            db_text(best_db));
  }
  return {additive(img, draws, best, multiplicative), best_db, best};
}

Raster uneven_illumination(const Raster& img, double direction_deg, double strength) {
  if (!(strength >= 0.0 && strength < 1.0)) {
    throw std::invalid_argument("uneven_illumination: strength must lie in [0,1)");
  }
  if (img.empty()) throw std::invalid_argument("uneven_illumination: empty image");
  if (strength == 0.0) return img;
  const double rad = direction_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(rad);
  const double uy = -std::sin(rad);  // screen y points down
  const double w = img.width() - 1;
  const double h = img.height() - 1;
  const double corners[4] = {0.0, w * ux, h * uy, w * ux + h * uy};
  const double lo = *std::min_element(std::begin(corners), std::end(corners));
  const double hi = *std::max_element(std::begin(corners), std::end(corners));
  const double span = hi - lo;

  Raster out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double t = span > 0.0 ? (x * ux + y * uy - lo) / span : 1.0;
      out(x, y) = std::clamp(img(x, y) * ((1.0 - strength) + strength * t), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace vk
