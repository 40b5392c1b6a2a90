#pragma once

#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

// ---------------------------------------------------------------------------
// Contrast limited adaptive histogram equalization
// ---------------------------------------------------------------------------

struct ClaheParams {
  int tiles_x = 8;
  int tiles_y = 8;
  int bins = 256;
  double clip_limit = 0.01;  // bin ceiling as a fraction of the tile's pixel count
};

void validate(const ClaheParams& params);

/// Per-tile transfer functions: bin index -> output level in [0,1].
struct ClaheMapping {
  int tiles_x = 0;
  int tiles_y = 0;
  int bins = 0;
  std::vector<int> x_edges;  // tiles_x + 1 column boundaries
  std::vector<int> y_edges;  // tiles_y + 1 row boundaries
  std::vector<std::vector<double>> transfer;  // [ty * tiles_x + tx][bin]
};

int histogram_bin(double value, int bins) noexcept;

/// Clips a histogram at `ceiling` and spreads the excess evenly over all bins,
/// repeating up to five rounds; whatever is still above the ceiling after that
/// fills the bins that remain below it.
std::vector<double> clip_histogram(std::vector<double> histogram, double ceiling);

ClaheMapping clahe_mapping(const Raster& img, const ClaheParams& params);

/// Clipped per-tile equalization with bilinear blending of the four nearest
/// tile transfer functions.
Raster clahe(const Raster& img, const ClaheParams& params = {});

// ---------------------------------------------------------------------------
// Sum of linear top-hats followed by a Laplacian-of-Gaussian curvature step
// ---------------------------------------------------------------------------

struct ZanaKleinParams {
  int line_length = 15;
  int orientations = 12;
  double log_sigma = 1.75;
};

/// Sum over orientations of top-hats with line elements.
Raster sum_of_line_tophats(const Raster& img, int line_length, int orientations);

/// normalize(max(0, -LoG(sum_of_line_tophats))).
Raster zana_klein(const Raster& img, const ZanaKleinParams& params = {});

// ---------------------------------------------------------------------------
// Multiscale line detector
// ---------------------------------------------------------------------------

struct LineDetectorParams {
  int orientations = 12;
  int window = 15;
  std::vector<int> lengths{1, 3, 5, 7, 9, 11, 13, 15};
};

void validate(const LineDetectorParams& params);

/// Mean of the image over a window x window box (replicate borders).
Raster box_mean(const Raster& img, int window);

/// Basic line response at one length: max over orientations of the mean along
/// the line through each pixel, minus the window mean.
Raster line_response(const Raster& img, int length, int window, int orientations);

/// Zero-mean, unit-variance rescaling over the whole image; constant input
/// gives all zeros.
Raster standardize(const Raster& img);

/// Equal-weight combination of the standardized line responses over all
/// lengths and the standardized image, then min-max normalized.
Raster line_detector(const Raster& img, const LineDetectorParams& params = {});

// ---------------------------------------------------------------------------
// Isotropic undecimated wavelet transform
// ---------------------------------------------------------------------------

struct IuwtDecomposition {
  std::vector<Raster> scaling;  // c_0 .. c_J, c_0 = input
  std::vector<Raster> wavelet;  // w_1 .. w_J stored at index j-1
};

/// A-trous decomposition with the B3-spline kernel (1,4,6,4,1)/16 dilated by
/// 2^(j-1) holes at level j.
IuwtDecomposition iuwt_decompose(const Raster& img, int levels,
                                 const Padding& padding = Padding::replicate());

struct IuwtParams {
  int levels = 4;
  std::vector<int> summed_levels{2, 3};
  Polarity polarity = Polarity::Bright;
};

/// normalize(max(0, +/- sum of selected wavelet levels)); the sign follows
/// the vessel polarity.
Raster iuwt_enhance(const Raster& img, const IuwtParams& params = {});

}  // namespace vk
