#include "vesselkit/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vesselkit/gaussian.hpp"

namespace vk {

void validate(const HessianParams& p) {
  if (p.scales.empty()) throw std::invalid_argument("hessian: scale list is empty");
  for (double s : p.scales) {
    if (!(s > 0.0)) throw std::invalid_argument("hessian: scales must be positive");
  }
  if (!(p.beta > 0.0)) throw std::invalid_argument("hessian: beta must be positive");
  if (p.c && !(*p.c > 0.0)) throw std::invalid_argument("hessian: c must be positive");
  if (!(p.tau > 0.0 && p.tau <= 1.0)) throw std::invalid_argument("hessian: tau must lie in (0,1]");
}

HessianField hessian_field(const Raster& img, double sigma, double gamma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("hessian_field: sigma must be positive");
  const auto g0 = gaussian_kernel(sigma, 0);
  const auto g1 = gaussian_kernel(sigma, 1);
  const auto g2 = gaussian_kernel(sigma, 2);
  const double norm = std::pow(sigma, gamma);

  auto scaled = [norm](const Raster& r) {
    std::vector<double> v(r.data().begin(), r.data().end());
    for (double& x : v) x *= norm;
    return v;
  };

  HessianField f;
  f.width = img.width();
  f.height = img.height();
  f.sigma = sigma;
  f.xx = scaled(convolve_separable(img, g2, g0));
  f.xy = scaled(convolve_separable(img, g1, g1));
  f.yy = scaled(convolve_separable(img, g0, g2));
  return f;
}

EigenPair eigenvalues_2x2(double a, double b, double c) noexcept {
  const double half_trace = 0.5 * (a + c);
  const double disc = std::hypot(0.5 * (a - c), b);
  // Root of larger magnitude first; the other from the determinant avoids
  // cancellation.
  const double big = half_trace >= 0.0 ? half_trace + disc : half_trace - disc;
  if (big == 0.0) return {0.0, 0.0};
  const double other = (a * c - b * b) / big;
  return std::abs(other) <= std::abs(big) ? EigenPair{other, big} : EigenPair{big, other};
}

EigenField eigenvalues_2x2(const HessianField& field) {
  EigenField e;
  e.width = field.width;
  e.height = field.height;
  e.small.resize(field.xx.size());
  e.large.resize(field.xx.size());
  for (std::size_t i = 0; i < field.xx.size(); ++i) {
    const auto [s, l] = eigenvalues_2x2(field.xx[i], field.xy[i], field.yy[i]);
    e.small[i] = s;
    e.large[i] = l;
  }
  return e;
}

namespace {

// Eigenvalues with the sign convention of bright structures (ridges have a
// negative large eigenvalue). Dark polarity flips both signs.
EigenField oriented_eigenvalues(const Raster& img, double sigma, const HessianParams& p) {
  EigenField e = eigenvalues_2x2(hessian_field(img, sigma, p.gamma));
  if (p.polarity == Polarity::Dark) {
    for (double& v : e.small) v = -v;
    for (double& v : e.large) v = -v;
  }
  return e;
}

void max_into(std::vector<double>& acc, const std::vector<double>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], v[i]);
}

std::vector<double> frangi_scale(const EigenField& e, const HessianParams& p) {
  const std::size_t n = e.large.size();
  double c = 0.0;
  if (p.c) {
    c = *p.c;
  } else {
    double max_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_norm = std::max(max_norm, std::hypot(e.small[i], e.large[i]));
    c = 0.5 * max_norm;
  }
  std::vector<double> v(n, 0.0);
  if (c == 0.0) return v;
  const double two_beta2 = 2.0 * p.beta * p.beta;
  const double two_c2 = 2.0 * c * c;
  for (std::size_t i = 0; i < n; ++i) {
    const double l2 = e.large[i];
    if (l2 >= 0.0) continue;
    const double rb = e.small[i] / l2;
    const double s2 = e.small[i] * e.small[i] + l2 * l2;
    v[i] = std::exp(-rb * rb / two_beta2) * (1.0 - std::exp(-s2 / two_c2));
  }
  return v;
}

std::vector<double> neurite_scale(const EigenField& e, double alpha) {
  const std::size_t n = e.large.size();
  std::vector<double> dominant(n);
  double lowest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l1 = e.small[i] + alpha * e.large[i];
    const double l2 = e.large[i] + alpha * e.small[i];
    // Largest in magnitude, sign kept.
    dominant[i] = std::abs(l1) > std::abs(l2) ? l1 : l2;
    lowest = std::min(lowest, dominant[i]);
  }
  std::vector<double> v(n, 0.0);
  if (lowest >= 0.0) return v;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominant[i] < 0.0) v[i] = std::min(1.0, dominant[i] / lowest);
  }
  return v;
}

std::vector<double> jerman_scale(const EigenField& e, double tau) {
  const std::size_t n = e.large.size();
  std::vector<double> l2(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    l2[i] = -e.large[i];  // vessels positive
    peak = std::max(peak, l2[i]);
  }
  const double cut = tau * peak;
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double rho = 0.0;
    if (l2[i] > cut) {
      rho = l2[i];
    } else if (l2[i] > 0.0) {
      rho = cut;
    }
    v[i] = volume_ratio(l2[i], rho);
  }
  return v;
}

template <typename PerScale>
Raster fuse_scales(const Raster& img, const HessianParams& p, PerScale&& per_scale) {
  validate(p);
  if (img.empty()) throw std::invalid_argument("hessian measure on an empty image");
  std::vector<double> acc(img.size(), 0.0);
  for (double sigma : p.scales) max_into(acc, per_scale(oriented_eigenvalues(img, sigma, p)));
  return Raster(img.width(), img.height(), std::move(acc));
}

}  // namespace

double volume_ratio(double lambda2, double lambda_rho) noexcept {
  if (lambda2 <= 0.0 || lambda_rho <= 0.0) return 0.0;
  if (lambda2 >= 0.5 * lambda_rho) return 1.0;
  const double k = 3.0 / (lambda2 + lambda_rho);
  return lambda2 * lambda2 * (lambda_rho - lambda2) * k * k * k;
}

Raster frangi_vesselness(const Raster& img, const HessianParams& params) {
  return normalize_minmax(
      fuse_scales(img, params, [&](const EigenField& e) { return frangi_scale(e, params); }));
}

Raster neuriteness(const Raster& img, const HessianParams& params) {
  return fuse_scales(img, params, [&](const EigenField& e) { return neurite_scale(e, params.alpha); });
}

Raster jerman_vesselness(const Raster& img, const HessianParams& params) {
  return fuse_scales(img, params, [&](const EigenField& e) { return jerman_scale(e, params.tau); });
}

}  // namespace vk
