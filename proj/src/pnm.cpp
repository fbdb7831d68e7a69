#include "gmorph/pnm.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "gmorph/errors.hpp"

namespace gmorph {

namespace {

/// Skips whitespace and '#' comments; returns the next significant char
/// without consuming it.
int skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string dummy;
      std::getline(in, dummy);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      in.get();
      continue;
    }
    return c;
  }
}

std::int64_t read_number(std::istream& in, const char* what) {
  if (skip_separators(in) == EOF) throw ParseError(std::string("missing ") + what);
  std::int64_t value = 0;
  bool any = false;
  for (;;) {
    const int c = in.peek();
    if (c < '0' || c > '9') break;
    in.get();
    any = true;
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000) throw ParseError(std::string(what) + " is out of range");
  }
  if (!any) throw ParseError(std::string("malformed ") + what);
  return value;
}

void read_dims(std::istream& in, std::int32_t& w, std::int32_t& h) {
  w = static_cast<std::int32_t>(read_number(in, "width"));
  h = static_cast<std::int32_t>(read_number(in, "height"));
  if (w < 1 || h < 1) throw ParseError("image dimensions must be positive");
  if (static_cast<std::int64_t>(w) * h > (std::int64_t{1} << 28)) {
    throw ParseError("image is too large");
  }
}

BinaryImage read_p1(std::istream& in, std::int32_t w, std::int32_t h) {
  BinaryImage img(w, h);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const int c = skip_separators(in);
    if (c != '0' && c != '1') throw ParseError("P1 raster must consist of 0 and 1 digits");
    in.get();
    img.pixels[i] = c == '1' ? 1 : 0;
  }
  return img;
}

BinaryImage read_p4(std::istream& in, std::int32_t w, std::int32_t h) {
  // Exactly one whitespace byte separates the header from the raster.
  const int c = in.get();
  if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
    throw ParseError("P4 header must end with a whitespace byte");
  }
  BinaryImage img(w, h);
  const std::int32_t row_bytes = (w + 7) / 8;
  for (std::int32_t r = 0; r < h; ++r) {
    for (std::int32_t byte = 0; byte < row_bytes; ++byte) {
      const int v = in.get();
      if (v == EOF) throw ParseError("P4 raster is truncated");
      for (std::int32_t bit = 0; bit < 8; ++bit) {
        const std::int32_t col = byte * 8 + bit;
        if (col >= w) break;
        img.put(r, col, (v >> (7 - bit)) & 1);
      }
    }
  }
  return img;
}

GrayImage read_p2(std::istream& in, std::int32_t w, std::int32_t h) {
  GrayImage img;
  img.width = w;
  img.height = h;
  img.maxval = static_cast<std::int32_t>(read_number(in, "maxval"));
  if (img.maxval < 1 || img.maxval > 255) throw ParseError("maxval must lie in 1..255");
  img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (auto& px : img.pixels) {
    const std::int64_t v = read_number(in, "sample");
    if (v > img.maxval) throw ParseError("sample exceeds maxval");
    px = static_cast<std::uint8_t>(v);
  }
  return img;
}

GrayImage read_p5(std::istream& in, std::int32_t w, std::int32_t h) {
  GrayImage img;
  img.width = w;
  img.height = h;
  img.maxval = static_cast<std::int32_t>(read_number(in, "maxval"));
  if (img.maxval < 1 || img.maxval > 255) throw ParseError("maxval must lie in 1..255");
  const int c = in.get();
  if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
    throw ParseError("P5 header must end with a whitespace byte");
  }
  img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (auto& px : img.pixels) {
    const int v = in.get();
    if (v == EOF) throw ParseError("P5 raster is truncated");
    if (v > img.maxval) throw ParseError("sample exceeds maxval");
    px = static_cast<std::uint8_t>(v);
  }
  return img;
}

}  // namespace

std::variant<BinaryImage, GrayImage> read_pnm(std::istream& in) {
  if (in.get() != 'P') throw ParseError("not a PNM file (missing magic)");
  const int kind = in.get();
  std::int32_t w = 0, h = 0;
  switch (kind) {
    case '1':
      read_dims(in, w, h);
      return read_p1(in, w, h);
    case '4':
      read_dims(in, w, h);
      return read_p4(in, w, h);
    case '2':
      read_dims(in, w, h);
      return read_p2(in, w, h);
    case '5':
      read_dims(in, w, h);
      return read_p5(in, w, h);
    default:
      throw ParseError("unsupported PNM variant (only P1, P2, P4, P5)");
  }
}

BinaryImage binarize(const GrayImage& img, int threshold) {
  if (threshold < 0 || threshold > 255) {
    throw std::invalid_argument("threshold must lie in 0..255");
  }
  BinaryImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    out.pixels[i] = img.pixels[i] >= threshold ? 1 : 0;
  }
  return out;
}

void write_pbm(std::ostream& out, const BinaryImage& img) {
  out << "P4\n" << img.width << " " << img.height << "\n";
  const std::int32_t row_bytes = (img.width + 7) / 8;
  for (std::int32_t r = 0; r < img.height; ++r) {
    for (std::int32_t byte = 0; byte < row_bytes; ++byte) {
      std::uint8_t v = 0;
      for (std::int32_t bit = 0; bit < 8; ++bit) {
        const std::int32_t col = byte * 8 + bit;
        if (col < img.width && img.at(r, col)) v |= static_cast<std::uint8_t>(1u << (7 - bit));
      }
      out.put(static_cast<char>(v));
    }
  }
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  for (std::uint8_t px : img.pixels) out.put(static_cast<char>(px));
}

}  // namespace gmorph
