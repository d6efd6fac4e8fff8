// Copyright 2026 The QLA2D Authors
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

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qla/config.hpp"
#include "qla/lattice.hpp"

namespace qla {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to a temporary sibling and renames it into place, so a reader never
// sees a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

// Header line "QLA2D v1 <nx> <ny> <ncomp> <t>\n", then nx*ny*ncomp
// little-endian doubles: component-major, then row-major with x fastest.
struct Snapshot {
  int nx = 0;
  int ny = 0;
  int ncomp = 0;
  long t = 0;
  std::vector<double> data;

  const double* comp(int c) const { return data.data() + static_cast<std::size_t>(c) * nx * ny; }
  std::vector<double> component(int c) const;
};

Snapshot snapshot_of(const QubitField& field, long t);
// Only H_z, as a one-component snapshot.
Snapshot hz_snapshot(const QubitField& field, long t);
QubitField field_of(const Snapshot& snap);

std::string encode_snapshot(const Snapshot& snap);
// Throws IoError on a malformed header or a size mismatch.
Snapshot decode_snapshot(std::string_view bytes);

// 8-bit grayscale, linear. PositiveClip maps max(v, 0) onto [0, 255] with
// the largest value white; a field with nothing positive is black. Signed
// maps [-m, m] onto [1, 255] with 0 at 128, m = max |v|. A field whose
// values are all equal and not covered by the zero rule is mid-gray (128).
// Throws std::invalid_argument on non-finite input.
std::vector<unsigned char> render_heatmap(const std::vector<double>& values, HeatmapMapping mapping);

// Binary PGM: "P5\n<nx> <ny>\n255\n" then the pixels. Row 0 of the image
// is lattice row j = ny - 1, so y points up as in the figures.
std::string encode_pgm(int nx, int ny, const std::vector<unsigned char>& pixels);

}  // namespace qla
