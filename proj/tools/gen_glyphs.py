#!/usr/bin/env python3
# Copyright 2026 The svcgraph Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates include/svcgraph/glyphs.hpp from Pillow's bundled bitmap font.

Each printable ASCII glyph (32..126) is stored as 11 rows of 6-bit masks,
most significant of the six bits is the leftmost pixel.
"""
import sys

from PIL import Image, ImageDraw, ImageFont

HEADER = """// Copyright 2026 The svcgraph Authors. All Rights Reserved.
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

// Generated by tools/gen_glyphs.py. Do not edit.
#pragma once

#include <array>
#include <cstdint>

namespace svc::glyphs {

inline constexpr int kCellWidth = 6;
inline constexpr int kCellHeight = 11;
inline constexpr char kFirst = 32;
inline constexpr char kLast = 126;

// Row masks per glyph, bit 5 is the leftmost column.
inline constexpr std::array<std::array<std::uint8_t, kCellHeight>, kLast - kFirst + 1> kRows = {{
"""


def main(out_path):
    font = ImageFont.load_default_imagefont()
    lines = []
    for code in range(32, 127):
        im = Image.new("L", (6, 11), 0)
        ImageDraw.Draw(im).text((0, 0), chr(code), font=font, fill=255)
        rows = []
        for y in range(11):
            mask = 0
            for x in range(6):
                if im.getpixel((x, y)):
                    mask |= 1 << (5 - x)
            rows.append("0x%02x" % mask)
        shown = chr(code).replace("\\", "backslash")
        lines.append("    {{%s}},  // '%s'" % (", ".join(rows), shown))
    with open(out_path, "w") as f:
        f.write(HEADER)
        f.write("\n".join(lines))
        f.write("\n}};\n\n}  // namespace svc::glyphs\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "include/svcgraph/glyphs.hpp")
