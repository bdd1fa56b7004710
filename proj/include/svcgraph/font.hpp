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

// Metrics of the embedded monospace bitmap font. A text of size `s` is
// drawn with every glyph cell scaled to s pixels high.

#pragma once

#include <string_view>

#include "svcgraph/core.hpp"
#include "svcgraph/glyphs.hpp"

namespace svc::font {

inline bool has_glyph(char c) { return c >= glyphs::kFirst && c <= glyphs::kLast; }

inline double scale_for(double text_size) { return text_size / glyphs::kCellHeight; }

inline double text_width(std::string_view text, double text_size) {
  return static_cast<double>(text.size()) * glyphs::kCellWidth * scale_for(text_size);
}

/// Box covered by `text` when its top-left corner is at `origin`.
inline BBox text_box(std::string_view text, double text_size, Point origin) {
  return {origin.x, origin.y, origin.x + text_width(text, text_size),
          origin.y + text_size};
}

/// Whether pixel (gx, gy) of the glyph cell for `c` is ink. Characters
/// without a glyph render as a hollow box.
inline bool glyph_bit(char c, int gx, int gy) {
  if (gx < 0 || gy < 0 || gx >= glyphs::kCellWidth || gy >= glyphs::kCellHeight) return false;
  if (!has_glyph(c)) {
    return (gy >= 2 && gy <= 9) && (gx == 0 || gx == 4 || gy == 2 || gy == 9) && gx <= 4;
  }
  const auto row = glyphs::kRows[static_cast<std::size_t>(c - glyphs::kFirst)][gy];
  return (row >> (glyphs::kCellWidth - 1 - gx)) & 1;
}

}  // namespace svc::font
