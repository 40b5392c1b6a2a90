#pragma once

#include <span>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

/// Sampled Gaussian derivative kernel of order 0, 1 or 2, truncated at
/// +/- ceil(4 sigma). Index i holds the tap at offset i - radius.
///
/// The taps are moment-corrected so that discrete convolution is exact on
/// low-order polynomials: order 0 sums to 1; order 1 sums to 0 and maps x to
/// 1; order 2 sums to 0 and maps x^2/2 to 1.
std::vector<double> gaussian_kernel(double sigma, int order);

/// Kernel radius used by gaussian_kernel.
int gaussian_radius(double sigma);

/// Separable convolution: `kx` along rows, then `ky` along columns.
/// out(x) = sum_i in(x - (i - r)) * k[i]  (true convolution).
Raster convolve_separable(const Raster& img, std::span<const double> kx,
                          std::span<const double> ky,
                          const Padding& padding = Padding::replicate());

Raster gaussian_blur(const Raster& img, double sigma,
                     const Padding& padding = Padding::replicate());

}  // namespace vk
