// Copyright 2026 The svcgraph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// RGB raster, coverage-based drawing primitives and PNG encoding.
//
// Pixel (i, j) samples the point (i, j). Without anti-aliasing a shape
// covers a pixel iff it contains that point; with anti-aliasing coverage is
// the fraction of a 4x4 grid of sub-samples inside the shape.

#pragma once

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "svcgraph/core.hpp"

namespace svc {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  RasterImage() = default;
  RasterImage(int w, int h, Rgb fill = kWhite) : width(w), height(h) {
    if (w < 0 || h < 0) throw Error(ErrorCode::kInvalidArgument, "negative image size");
    pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
      pixels[i] = fill.r;
      pixels[i + 1] = fill.g;
      pixels[i + 2] = fill.b;
    }
  }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

  Rgb at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }

  void set(int x, int y, Rgb c) {
    if (!in_bounds(x, y)) return;
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }

  /// Mixes `c` into pixel (x, y) with weight `coverage` in [0, 1].
  void blend(int x, int y, Rgb c, double coverage) {
    if (!in_bounds(x, y) || coverage <= 0) return;
    if (coverage >= 1) {
      set(x, y, c);
      return;
    }
    const Rgb old = at(x, y);
    const auto mix = [&](std::uint8_t o, std::uint8_t n) {
      return static_cast<std::uint8_t>(std::lround(o + (n - o) * coverage));
    };
    set(x, y, {mix(old.r, c.r), mix(old.g, c.g), mix(old.b, c.b)});
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

// ---------------------------------------------------------------------------
// Coverage painting

using InsideFn = std::function<bool(double, double)>;

/// Paints every pixel whose sample(s) fall inside `inside`, restricted to
/// `region` and the image.
inline void paint(RasterImage& img, const BBox& region, bool antialias, Rgb color, const InsideFn& inside) {
  const int x0 = std::max(0, static_cast<int>(std::floor(region.x_min - 1)));
  const int y0 = std::max(0, static_cast<int>(std::floor(region.y_min - 1)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(region.x_max + 1)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(region.y_max + 1)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (!antialias) {
        if (inside(x, y)) img.set(x, y, color);
        continue;
      }
      int hits = 0;
      for (int sy = 0; sy < 4; ++sy) {
        for (int sx = 0; sx < 4; ++sx) {
          hits += inside(x + (sx + 0.5) / 4 - 0.5, y + (sy + 0.5) / 4 - 0.5);
        }
      }
      img.blend(x, y, color, hits / 16.0);
    }
  }
}

/// Segment with round caps: all points within `radius` of [a, b].
inline void draw_capsule(RasterImage& img, Point a, Point b, double radius, bool aa, Rgb color = kBlack) {
  const BBox region = BBox{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)}.expanded(radius);
  paint(img, region, aa, color,
        [&](double x, double y) { return point_segment_distance({x, y}, a, b) <= radius + 1e-9; });
}

inline void draw_rect_outline(RasterImage& img, const BBox& box, double line_width, bool aa, Rgb color = kBlack) {
  const double half = line_width / 2;
  paint(img, box.expanded(half), aa, color, [&](double x, double y) {
    const Point p{x, y};
    const double d = box.contains(p) ? point_box_outline_distance(p, box) : point_box_distance(p, box);
    return d <= half + 1e-9;
  });
}

inline void fill_rect(RasterImage& img, const BBox& box, bool aa, Rgb color) {
  paint(img, box, aa, color, [&](double x, double y) { return box.contains({x, y}); });
}

/// Ellipse inscribed in `box`, stroked with an approximate band of
/// `line_width`: the implicit value divided by its gradient length.
inline void draw_ellipse_outline(RasterImage& img, const BBox& box, double line_width, bool aa, Rgb color = kBlack) {
  const Point c = box.center();
  const double a = std::max(box.width() / 2, 1e-9);
  const double b = std::max(box.height() / 2, 1e-9);
  const double half = line_width / 2;
  paint(img, box.expanded(half), aa, color, [&](double x, double y) {
    const double u = (x - c.x) / a;
    const double v = (y - c.y) / b;
    const double r = std::hypot(u, v);
    if (r == 0) return std::min(a, b) <= half;
    // Gradient of r(x, y) = |(u, v)|.
    const double gx = u / (a * r);
    const double gy = v / (b * r);
    return std::abs(r - 1) / std::hypot(gx, gy) <= half + 1e-9;
  });
}

inline void fill_triangle(RasterImage& img, Point p0, Point p1, Point p2, bool aa, Rgb color = kBlack) {
  const std::array<Point, 3> pts{p0, p1, p2};
  const BBox region = bbox_of(pts);
  const auto edge = [](Point a, Point b, double x, double y) { return (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x); };
  paint(img, region, aa, color, [&](double x, double y) {
    const double e0 = edge(p0, p1, x, y), e1 = edge(p1, p2, x, y), e2 = edge(p2, p0, x, y);
    return (e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0);
  });
}

// ---------------------------------------------------------------------------
// PNG
//
// libpng reports errors by longjmp to png_jmpbuf. Every object with a
// destructor is created before setjmp so the jump never skips one.

namespace detail {

inline void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

inline void png_flush_noop(png_structp) {}

struct PngReadState {
  std::string_view data;
  std::size_t pos = 0;
};

inline void png_consume(png_structp png, png_bytep out, png_size_t length) {
  auto* s = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (s->pos + length > s->data.size()) png_error(png, "truncated PNG");
  std::memcpy(out, s->data.data() + s->pos, length);
  s->pos += length;
}

inline void png_warn_ignore(png_structp, png_const_charp) {}
[[noreturn]] inline void png_fail(png_structp png, png_const_charp) { png_longjmp(png, 1); }

}  // namespace detail

/// 8-bit RGB, non-interlaced PNG bytes. No timestamps or text chunks are
/// written, so equal images encode to equal bytes.
inline std::string encode_png(const RasterImage& img) {
  std::string out;
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(img.pixels.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) * 3);
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, detail::png_fail, detail::png_warn_ignore);
  if (!png) throw Error(ErrorCode::kIo, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "PNG encoding failed");
  }
  png_set_write_fn(png, &out, detail::png_append, detail::png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

/// Decodes any PNG into 8-bit RGB (alpha is dropped, gray is expanded).
inline RasterImage decode_png(std::string_view data) {
  if (data.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(data.data()), 0, 8) != 0) {
    throw Error(ErrorCode::kIo, "not a PNG file");
  }
  detail::PngReadState state{data, 0};
  RasterImage img;
  std::vector<png_bytep> rows;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, detail::png_fail, detail::png_warn_ignore);
  if (!png) throw Error(ErrorCode::kIo, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kIo, "malformed PNG data");
  }
  png_set_read_fn(png, &state, detail::png_consume);
  png_read_info(png, info);
  png_set_strip_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const auto w = png_get_image_width(png, info);
  const auto h = png_get_image_height(png, info);
  if (w > 1u << 15 || h > 1u << 15) png_error(png, "image too large");
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.pixels.data() + static_cast<std::size_t>(y) * w * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

}  // namespace svc
