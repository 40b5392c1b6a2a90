#include "gif.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <string>

#include "vesselkit/cli/error.hpp"

namespace vk::cli::detail {

namespace {

class Reader {
 public:
  Reader(std::vector<std::uint8_t> bytes, std::string name)
      : bytes_(std::move(bytes)), name_(std::move(name)) {}

  std::uint8_t u8() {
    if (pos_ >= bytes_.size()) fail("truncated file");
    return bytes_[pos_++];
  }
  int u16() {
    const int lo = u8();
    return lo | (u8() << 8);
  }
  void skip(std::size_t n) {
    if (bytes_.size() - pos_ < n) fail("truncated file");
    pos_ += n;
  }
  void skip_sub_blocks() {
    for (std::uint8_t len = u8(); len != 0; len = u8()) skip(len);
  }
  std::vector<std::uint8_t> sub_blocks() {
    std::vector<std::uint8_t> out;
    for (std::uint8_t len = u8(); len != 0; len = u8()) {
      if (bytes_.size() - pos_ < len) fail("truncated file");
      out.insert(out.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                 bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
      pos_ += len;
    }
    return out;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(name_ + ": invalid GIF (" + what + ")");
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_palette(Reader& in, int flags) {
  const std::size_t entries = std::size_t{1} << ((flags & 0x07) + 1);
  std::vector<std::uint8_t> palette(entries * 3);
  for (auto& b : palette) b = in.u8();
  return palette;
}

std::vector<std::uint8_t> lzw_decode(const std::vector<std::uint8_t>& data, int min_code_size,
                                     std::size_t expected, const Reader& in) {
  if (min_code_size < 2 || min_code_size > 8) in.fail("bad LZW code size");
  const int clear = 1 << min_code_size;
  const int end = clear + 1;
  std::array<std::uint16_t, 4096> prefix{};
  std::array<std::uint8_t, 4096> suffix{};
  std::array<std::uint8_t, 4097> stack{};
  for (int i = 0; i < clear; ++i) suffix[i] = static_cast<std::uint8_t>(i);

  std::vector<std::uint8_t> out;
  out.reserve(expected);
  int code_size = min_code_size + 1;
  int next = end + 1;
  int prev = -1;
  std::uint8_t first = 0;
  std::uint32_t bits = 0;
  int nbits = 0;
  std::size_t pos = 0;

  while (out.size() < expected) {
    while (nbits < code_size) {
      if (pos >= data.size()) return out;
      bits |= static_cast<std::uint32_t>(data[pos++]) << nbits;
      nbits += 8;
    }
    const int code = static_cast<int>(bits & ((1u << code_size) - 1));
    bits >>= code_size;
    nbits -= code_size;

    if (code == clear) {
      code_size = min_code_size + 1;
      next = end + 1;
      prev = -1;
      continue;
    }
    if (code == end) break;
    if (prev < 0) {
      if (code >= clear) in.fail("bad first code");
      out.push_back(static_cast<std::uint8_t>(code));
      prev = code;
      first = static_cast<std::uint8_t>(code);
      continue;
    }
    int cur = code;
    std::size_t depth = 0;
    if (code >= next) {
      if (code > next) in.fail("bad LZW code");
      stack[depth++] = first;
      cur = prev;
    }
    while (cur >= clear) {
      if (depth >= stack.size() - 1) in.fail("corrupt LZW table");
      stack[depth++] = suffix[cur];
      cur = prefix[cur];
    }
    stack[depth++] = static_cast<std::uint8_t>(cur);
    first = static_cast<std::uint8_t>(cur);
    while (depth > 0) out.push_back(stack[--depth]);

    if (next < 4096) {
      prefix[next] = static_cast<std::uint16_t>(prev);
      suffix[next] = first;
      ++next;
      if (next == (1 << code_size) && code_size < 12) ++code_size;
    }
    prev = code;
  }
  return out;
}

}  // namespace

RgbImage read_gif(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path.string());
  Reader in(std::vector<std::uint8_t>(std::istreambuf_iterator<char>(file), {}), path.string());

  std::string magic(6, '\0');
  for (char& c : magic) c = static_cast<char>(in.u8());
  if (magic != "GIF87a" && magic != "GIF89a") in.fail("bad signature");

  RgbImage img;
  img.width = in.u16();
  img.height = in.u16();
  if (img.width <= 0 || img.height <= 0) in.fail("empty canvas");
  const int screen_flags = in.u8();
  in.skip(2);  // background index, aspect ratio
  std::vector<std::uint8_t> global;
  if (screen_flags & 0x80) global = read_palette(in, screen_flags);
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);

  for (;;) {
    const std::uint8_t block = in.u8();
    if (block == 0x3B) in.fail("no image data");
    if (block == 0x21) {
      in.u8();  // extension label
      in.skip_sub_blocks();
      continue;
    }
    if (block != 0x2C) in.fail("unknown block");

    const int left = in.u16();
    const int top = in.u16();
    const int w = in.u16();
    const int h = in.u16();
    const int flags = in.u8();
    std::vector<std::uint8_t> palette = (flags & 0x80) ? read_palette(in, flags) : global;
    if (palette.empty()) in.fail("no colour table");
    const int min_code_size = in.u8();
    const auto data = in.sub_blocks();
    const std::size_t count = static_cast<std::size_t>(w) * h;
    const auto indices = lzw_decode(data, min_code_size, count, in);
    if (indices.size() < count) in.fail("short image data");

    std::vector<int> rows(h);
    if (flags & 0x40) {
      int r = 0;
      for (const auto& [start, step] : {std::pair{0, 8}, {4, 8}, {2, 4}, {1, 2}})
        for (int y = start; y < h; y += step) rows[r++] = y;
    } else {
      for (int y = 0; y < h; ++y) rows[y] = y;
    }
    const std::size_t colours = palette.size() / 3;
    for (int r = 0; r < h; ++r) {
      const int y = top + rows[r];
      if (y < 0 || y >= img.height) continue;
      for (int x = 0; x < w; ++x) {
        const int cx = left + x;
        if (cx < 0 || cx >= img.width) continue;
        const std::size_t idx = indices[static_cast<std::size_t>(r) * w + x];
        if (idx >= colours) in.fail("colour index out of range");
        std::uint8_t* px = &img.rgb[(static_cast<std::size_t>(y) * img.width + cx) * 3];
        px[0] = palette[idx * 3];
        px[1] = palette[idx * 3 + 1];
        px[2] = palette[idx * 3 + 2];
      }
    }
    return img;
  }
}

}  // namespace vk::cli::detail
