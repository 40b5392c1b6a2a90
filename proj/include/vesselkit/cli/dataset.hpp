#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vk::cli {

enum class LayoutKind { Drive, Stare, Hrf, Flat };

LayoutKind parse_layout_kind(std::string_view name);
std::string layout_kind_name(LayoutKind kind);

/// Where images, manual annotations and FOV masks live.
///   drive: images/, 1st_manual/, mask/           key = name up to the first '_'
///   stare: stare-images/ (or images/), labels-ah/ key = name up to the first '.'
///   hrf:   images/, manual1/, mask/              key = stem without "_mask"
///   flat:  images/, truth/, fov/ (overridable)   key = stem
struct DatasetLayout {
  std::filesystem::path root;
  LayoutKind kind = LayoutKind::Flat;
  std::filesystem::path images;
  std::filesystem::path truths;
  std::filesystem::path fovs;  // empty when the layout has no FOV masks
};

DatasetLayout make_layout(LayoutKind kind, const std::filesystem::path& root);

struct DatasetEntry {
  std::string key;
  std::filesystem::path image;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> fov;
};

/// Image files paired with annotations by key, sorted by key. Throws
/// InputError naming the expected subpaths when no images are found.
std::vector<DatasetEntry> discover(const DatasetLayout& layout);

/// Whether the extension names an image format the loader understands.
bool is_image_file(const std::filesystem::path& path);

}  // namespace vk::cli
