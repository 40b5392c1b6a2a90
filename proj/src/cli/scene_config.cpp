#include "vesselkit/cli/scene_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "vesselkit/cli/error.hpp"

namespace vk::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> numbers(std::string_view text, int line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{}) {
      throw InputError("scene config line " + std::to_string(line) + ": expected a number near '" +
                       std::string(text.substr(pos)) + "'");
    }
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

void expect_count(const std::vector<double>& v, std::size_t lo, std::size_t hi, std::string_view key,
                  int line) {
  if (v.size() < lo || v.size() > hi) {
    throw InputError("scene config line " + std::to_string(line) + ": '" + std::string(key) +
                     "' takes " + std::to_string(lo) +
                     (lo == hi ? "" : " or " + std::to_string(hi)) + " numbers");
  }
}

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

SceneSpec parse_scene_config(std::string_view text) {
  SceneSpec scene;
  scene.primitives.clear();
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("scene config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto v = numbers(trim(line.substr(eq + 1)), line_no);
    if (key == "canvas") {
      expect_count(v, 2, 2, key, line_no);
      scene.width = static_cast<int>(v[0]);
      scene.height = static_cast<int>(v[1]);
      if (scene.width != v[0] || scene.height != v[1]) {
        throw InputError("scene config line " + std::to_string(line_no) + ": canvas needs integers");
      }
    } else if (key == "smoothing") {
      expect_count(v, 1, 1, key, line_no);
      scene.smoothing = v[0];
    } else if (key == "vessel") {
      expect_count(v, 5, 6, key, line_no);
      scene.primitives.push_back(Vessel{{v[0], v[1]}, {v[2], v[3]}, v[4], v.size() > 5 ? v[5] : 1.0});
    } else if (key == "blob") {
      expect_count(v, 3, 4, key, line_no);
      scene.primitives.push_back(Blob{{v[0], v[1]}, v[2], v.size() > 3 ? v[3] : 1.0});
    } else if (key == "cross") {
      expect_count(v, 4, 5, key, line_no);
      scene.primitives.push_back(Cross{{v[0], v[1]}, v[2], v[3], v.size() > 4 ? v[4] : 1.0});
    } else {
      throw InputError("scene config line " + std::to_string(line_no) + ": unknown key '" +
                       std::string(key) + "'");
    }
  }
  try {
    validate(scene);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("scene config: ") + e.what());
  }
  return scene;
}

SceneSpec load_scene_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scene config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene_config(text.str());
}

std::string format_scene_config(const SceneSpec& scene) {
  std::ostringstream out;
  out << "canvas = " << scene.width << ' ' << scene.height << '\n';
  out << "smoothing = " << num(scene.smoothing) << '\n';
  for (const auto& prim : scene.primitives) {
    if (const auto* v = std::get_if<Vessel>(&prim)) {
      out << "vessel = " << num(v->p0.x) << ' ' << num(v->p0.y) << ' ' << num(v->p1.x) << ' '
          << num(v->p1.y) << ' ' << num(v->width) << ' ' << num(v->intensity) << '\n';
    } else if (const auto* b = std::get_if<Blob>(&prim)) {
      out << "blob = " << num(b->center.x) << ' ' << num(b->center.y) << ' ' << num(b->diameter)
          << ' ' << num(b->intensity) << '\n';
    } else if (const auto* c = std::get_if<Cross>(&prim)) {
      out << "cross = " << num(c->center.x) << ' ' << num(c->center.y) << ' ' << num(c->arm_length)
          << ' ' << num(c->width) << ' ' << num(c->intensity) << '\n';
    }
  }
  return out.str();
}

}  // namespace vk::cli
