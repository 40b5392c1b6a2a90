#pragma once

#include <optional>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

/// Per-pixel symmetric 2x2 Hessian at one scale, scale-normalized by sigma^gamma.
/// x runs along rows (columns index), y down the image.
struct HessianField {
  int width = 0;
  int height = 0;
  double sigma = 0.0;
  std::vector<double> xx;
  std::vector<double> xy;
  std::vector<double> yy;
};

/// Eigenvalues per pixel, ordered |small| <= |large|.
struct EigenField {
  int width = 0;
  int height = 0;
  std::vector<double> small;
  std::vector<double> large;
};

struct HessianParams {
  std::vector<double> scales{1, 2, 3, 4, 5, 6, 7, 8};
  double gamma = 2.0;
  double beta = 0.5;             // vesselness blob sensitivity
  std::optional<double> c;       // vesselness structure sensitivity; default half max Frobenius norm
  double alpha = -1.0 / 3.0;     // neuriteness Hessian modification
  double tau = 0.5;              // volume-ratio cut-off, in (0, 1]
  Polarity polarity = Polarity::Bright;
};

void validate(const HessianParams& params);

/// Second Gaussian derivatives at scale sigma (kernels truncated at
/// +/- ceil(4 sigma), replicate borders) times sigma^gamma.
HessianField hessian_field(const Raster& img, double sigma, double gamma);

struct EigenPair {
  double small;
  double large;
};

/// Closed-form roots of [[a, b], [b, c]], ordered by magnitude.
EigenPair eigenvalues_2x2(double a, double b, double c) noexcept;

EigenField eigenvalues_2x2(const HessianField& field);

/// Multiscale vesselness: zero where the large eigenvalue has the wrong sign
/// for bright structures, else exp(-Rb^2/2beta^2)(1 - exp(-S^2/2c^2)); max over
/// scales, then min-max normalized.
Raster frangi_vesselness(const Raster& img, const HessianParams& params = {});

/// Neuriteness: ratio of the signed dominant modified eigenvalue to its
/// image-wide minimum, zero where that eigenvalue is non-negative. Max over
/// scales; values lie in [0,1] without further normalization.
Raster neuriteness(const Raster& img, const HessianParams& params = {});

/// Regularized volume ratio with cut-off tau, max over scales.
Raster jerman_vesselness(const Raster& img, const HessianParams& params = {});

/// The volume-ratio response for one pixel given the vessel-positive large
/// eigenvalue and its regularized counterpart.
double volume_ratio(double lambda2, double lambda_rho) noexcept;

}  // namespace vk
