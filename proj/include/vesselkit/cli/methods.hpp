#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vesselkit/baselines.hpp"
#include "vesselkit/bowler_hat.hpp"
#include "vesselkit/hessian.hpp"
#include "vesselkit/raster.hpp"

namespace vk::cli {

enum class MethodId { BowlerHat, Frangi, Neuriteness, Jerman, Clahe, ZanaKlein, LineDetector, Iuwt };

MethodId parse_method(std::string_view name);
std::string method_name(MethodId id);
std::vector<MethodId> all_methods();

struct MethodParams {
  BowlerHatParams bowler;
  HessianParams hessian;
  ClaheParams clahe;
  ZanaKleinParams zana_klein;
  LineDetectorParams line;
  IuwtParams iuwt;
};

/// Runs one enhancer on a bright-vessel image; the result lies in [0,1].
Raster enhance(const Raster& img, MethodId id, const MethodParams& params);

}  // namespace vk::cli
