#include "gmorph/classical.hpp"

#include <stdexcept>
#include <utility>

namespace gmorph {

namespace {

using Offsets = std::vector<std::pair<std::int32_t, std::int32_t>>;

Offsets se_offsets(FlatSE b) {
  if (b == FlatSE::Cross3) {
    return {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  }
  Offsets out;
  for (std::int32_t dr = -1; dr <= 1; ++dr) {
    for (std::int32_t dc = -1; dc <= 1; ++dc) out.push_back({dr, dc});
  }
  return out;
}

Offsets minkowski_sum(const Offsets& a, const Offsets& b) {
  std::vector<std::vector<std::uint8_t>> seen;
  Offsets out;
  // Offsets stay tiny (radius <= a few dozen); a flat de-dup grid is enough.
  std::int32_t radius = 0;
  for (const auto& [dr, dc] : a) radius = std::max({radius, std::abs(dr), std::abs(dc)});
  for (const auto& [dr, dc] : b) radius = std::max({radius, std::abs(dr), std::abs(dc)});
  const std::int32_t side = 4 * radius + 1;
  seen.assign(static_cast<std::size_t>(side),
              std::vector<std::uint8_t>(static_cast<std::size_t>(side), 0));
  for (const auto& [ar, ac] : a) {
    for (const auto& [br, bc] : b) {
      const std::int32_t r = ar + br, c = ac + bc;
      auto& cell = seen[static_cast<std::size_t>(r + 2 * radius)][static_cast<std::size_t>(c + 2 * radius)];
      if (!cell) {
        cell = 1;
        out.push_back({r, c});
      }
    }
  }
  return out;
}

/// nB: the structuring element dilated with itself n times ({origin} for 0).
Offsets scaled_offsets(FlatSE b, std::int32_t n) {
  Offsets acc{{0, 0}};
  const Offsets base = se_offsets(b);
  for (std::int32_t i = 0; i < n; ++i) acc = minkowski_sum(acc, base);
  return acc;
}

PixelSet erode_offsets(const PixelSet& m, const Offsets& off) {
  PixelSet out(m.width(), m.height());
  for (std::int32_t r = 0; r < m.height(); ++r) {
    for (std::int32_t c = 0; c < m.width(); ++c) {
      bool all = true;
      for (const auto& [dr, dc] : off) {
        if (!m.contains(r + dr, c + dc)) {
          all = false;
          break;
        }
      }
      if (all) out.add(r, c);
    }
  }
  return out;
}

PixelSet dilate_offsets(const PixelSet& m, const Offsets& off) {
  PixelSet out(m.width(), m.height());
  for (std::int32_t r = 0; r < m.height(); ++r) {
    for (std::int32_t c = 0; c < m.width(); ++c) {
      if (!m.contains(r, c)) continue;
      for (const auto& [dr, dc] : off) {
        const std::int32_t rr = r + dr, cc = c + dc;
        if (rr >= 0 && rr < m.height() && cc >= 0 && cc < m.width()) out.add(rr, cc);
      }
    }
  }
  return out;
}

PixelSet subtract(const PixelSet& a, const PixelSet& b) {
  PixelSet out = a;
  for (std::int32_t r = 0; r < a.height(); ++r) {
    for (std::int32_t c = 0; c < a.width(); ++c) {
      if (b.contains(r, c)) out.remove(r, c);
    }
  }
  return out;
}

}  // namespace

PixelSet::PixelSet(std::int32_t width, std::int32_t height)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("pixel set dimensions must be at least 1x1");
  }
}

PixelSet PixelSet::from_image(const BinaryImage& img) {
  PixelSet out(img.width, img.height);
  for (std::int32_t r = 0; r < img.height; ++r) {
    for (std::int32_t c = 0; c < img.width; ++c) {
      if (img.at(r, c)) out.add(r, c);
    }
  }
  return out;
}

bool PixelSet::empty() const {
  for (std::uint8_t b : bits_) {
    if (b) return false;
  }
  return true;
}

std::int64_t PixelSet::count() const {
  std::int64_t n = 0;
  for (std::uint8_t b : bits_) n += b;
  return n;
}

BinaryImage PixelSet::to_image() const {
  BinaryImage img(width_, height_);
  img.pixels = bits_;
  return img;
}

PixelSet erode_px(const PixelSet& m, FlatSE b) { return erode_offsets(m, se_offsets(b)); }

PixelSet dilate_px(const PixelSet& m, FlatSE b) { return dilate_offsets(m, se_offsets(b)); }

PixelSet open_px(const PixelSet& m, FlatSE b) { return dilate_px(erode_px(m, b), b); }

PixelSet open_px_scaled(const PixelSet& m, FlatSE b, std::int32_t n) {
  const Offsets off = scaled_offsets(b, n);
  return dilate_offsets(erode_offsets(m, off), off);
}

ClassicalSkeleton skel_px(const PixelSet& m, FlatSE b) {
  ClassicalSkeleton sk{b, m.width(), m.height(), {}};
  PixelSet eroded = m;  // M erode nB, starting at n = 0
  const Offsets base = se_offsets(b);
  while (!eroded.empty()) {
    sk.layers.push_back(subtract(eroded, dilate_offsets(erode_offsets(eroded, base), base)));
    eroded = erode_offsets(eroded, base);
  }
  return sk;
}

PixelSet recon_px(const ClassicalSkeleton& sk, std::int32_t k) {
  const std::int32_t top = std::max<std::int32_t>(sk.max_scale(), 0);
  if (k < 0 || k > top) {
    throw std::invalid_argument("k must lie in 0.." + std::to_string(top) + ", got " +
                                std::to_string(k));
  }
  PixelSet out(sk.width, sk.height);
  for (std::int32_t n = k; n <= sk.max_scale(); ++n) {
    const PixelSet grown =
        dilate_offsets(sk.layers[static_cast<std::size_t>(n)], scaled_offsets(sk.se, n));
    for (std::int32_t r = 0; r < sk.height; ++r) {
      for (std::int32_t c = 0; c < sk.width; ++c) {
        if (grown.contains(r, c)) out.add(r, c);
      }
    }
  }
  return out;
}

}  // namespace gmorph
