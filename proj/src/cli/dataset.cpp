#include "vesselkit/cli/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "vesselkit/cli/error.hpp"

namespace fs = std::filesystem;

namespace vk::cli {

LayoutKind parse_layout_kind(std::string_view name) {
  if (name == "drive") return LayoutKind::Drive;
  if (name == "stare") return LayoutKind::Stare;
  if (name == "hrf") return LayoutKind::Hrf;
  if (name == "flat") return LayoutKind::Flat;
  throw InputError("unknown dataset layout '" + std::string(name) +
                   "' (expected drive, stare, hrf or flat)");
}

std::string layout_kind_name(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Drive: return "drive";
    case LayoutKind::Stare: return "stare";
    case LayoutKind::Hrf: return "hrf";
    case LayoutKind::Flat: return "flat";
  }
  return "unknown";
}

DatasetLayout make_layout(LayoutKind kind, const fs::path& root) {
  DatasetLayout l{root, kind, {}, {}, {}};
  switch (kind) {
    case LayoutKind::Drive:
      l.images = root / "images";
      l.truths = root / "1st_manual";
      l.fovs = root / "mask";
      break;
    case LayoutKind::Stare:
      l.images = fs::is_directory(root / "stare-images") ? root / "stare-images" : root / "images";
      l.truths = root / "labels-ah";
      break;
    case LayoutKind::Hrf:
      l.images = root / "images";
      l.truths = root / "manual1";
      l.fovs = root / "mask";
      break;
    case LayoutKind::Flat:
      l.images = root / "images";
      l.truths = root / "truth";
      l.fovs = root / "fov";
      break;
  }
  return l;
}

bool is_image_file(const fs::path& path) {
  static const std::set<std::string> known{".png", ".jpg", ".jpeg", ".tif", ".tiff", ".ppm",
                                           ".pgm", ".pbm", ".pnm", ".bmp", ".gif"};
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return known.contains(ext);
}

namespace {

std::string key_for(LayoutKind kind, const fs::path& file) {
  const std::string name = file.filename().string();
  switch (kind) {
    case LayoutKind::Drive: return name.substr(0, name.find('_'));
    case LayoutKind::Stare: return name.substr(0, name.find('.'));
    case LayoutKind::Hrf:
    case LayoutKind::Flat: {
      std::string stem = file.stem().string();
      constexpr std::string_view suffix = "_mask";
      if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
      return stem;
    }
  }
  return name;
}

std::vector<fs::path> image_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (dir.empty() || !fs::is_directory(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::map<std::string, fs::path> index_by_key(LayoutKind kind, const fs::path& dir) {
  std::map<std::string, fs::path> out;
  for (const auto& file : image_files(dir)) out.emplace(key_for(kind, file), file);
  return out;
}

}  // namespace

std::vector<DatasetEntry> discover(const DatasetLayout& layout) {
  const auto images = index_by_key(layout.kind, layout.images);
  if (images.empty()) {
    std::string expected = "  images:      " + layout.images.string() + "\n  annotations: " +
                           layout.truths.string();
    if (!layout.fovs.empty()) expected += "\n  fov masks:   " + layout.fovs.string();
    throw InputError("no images found for " + layout_kind_name(layout.kind) + " layout under " +
                     layout.root.string() + "; expected:\n" + expected);
  }
  const auto truths = index_by_key(layout.kind, layout.truths);
  const auto fovs = index_by_key(layout.kind, layout.fovs);

  std::vector<DatasetEntry> entries;
  for (const auto& [key, path] : images) {
    DatasetEntry e{key, path, std::nullopt, std::nullopt};
    if (auto it = truths.find(key); it != truths.end()) e.truth = it->second;
    if (auto it = fovs.find(key); it != fovs.end()) e.fov = it->second;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace vk::cli
