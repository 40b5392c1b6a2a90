#include "vesselkit/cli/methods.hpp"

#include <array>
#include <utility>

#include "vesselkit/cli/error.hpp"

namespace vk::cli {

namespace {

constexpr std::array<std::pair<MethodId, std::string_view>, 8> kNames{{
    {MethodId::BowlerHat, "bowlerhat"},
    {MethodId::Frangi, "frangi"},
    {MethodId::Neuriteness, "neuriteness"},
    {MethodId::Jerman, "jerman"},
    {MethodId::Clahe, "clahe"},
    {MethodId::ZanaKlein, "zana-klein"},
    {MethodId::LineDetector, "line-detector"},
    {MethodId::Iuwt, "iuwt"},
}};

}  // namespace

MethodId parse_method(std::string_view name) {
  for (const auto& [id, n] : kNames)
    if (n == name) return id;
  std::string known;
  for (const auto& [id, n] : kNames) known += (known.empty() ? "" : ", ") + std::string(n);
  throw InputError("unknown method '" + std::string(name) + "' (expected one of " + known + ")");
}

std::string method_name(MethodId id) {
  for (const auto& [m, n] : kNames)
    if (m == id) return std::string(n);
  return "unknown";
}

std::vector<MethodId> all_methods() {
  std::vector<MethodId> out;
  for (const auto& [id, n] : kNames) out.push_back(id);
  return out;
}

Raster enhance(const Raster& img, MethodId id, const MethodParams& params) {
  HessianParams hessian = params.hessian;
  hessian.polarity = Polarity::Bright;
  IuwtParams iuwt = params.iuwt;
  iuwt.polarity = Polarity::Bright;
  switch (id) {
    case MethodId::BowlerHat: return bowler_hat(img, params.bowler);
    case MethodId::Frangi: return frangi_vesselness(img, hessian);
    case MethodId::Neuriteness: return neuriteness(img, hessian);
    case MethodId::Jerman: return jerman_vesselness(img, hessian);
    case MethodId::Clahe: return clahe(img, params.clahe);
    case MethodId::ZanaKlein: return zana_klein(img, params.zana_klein);
    case MethodId::LineDetector: return line_detector(img, params.line);
    case MethodId::Iuwt: return iuwt_enhance(img, iuwt);
  }
  throw std::logic_error("enhance: unhandled method");
}

}  // namespace vk::cli
