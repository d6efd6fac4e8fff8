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

#include "qla/output.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qla {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> Snapshot::component(int c) const {
  if (c < 0 || c >= ncomp) throw std::out_of_range("snapshot component out of range");
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  return std::vector<double>(comp(c), comp(c) + n);
}

Snapshot snapshot_of(const QubitField& field, long t) {
  const LatticeGeometry& g = field.geometry();
  Snapshot s{g.nx, g.ny, kComponents, t, {}};
  s.data.reserve(g.sites() * kComponents);
  for (int c = 0; c < kComponents; ++c) s.data.insert(s.data.end(), field.comp(c).begin(), field.comp(c).end());
  return s;
}

Snapshot hz_snapshot(const QubitField& field, long t) {
  const LatticeGeometry& g = field.geometry();
  return Snapshot{g.nx, g.ny, 1, t, field.comp(5)};
}

QubitField field_of(const Snapshot& snap) {
  if (snap.ncomp != kComponents) throw IoError("snapshot does not hold all six components");
  QubitField f = new_field(LatticeGeometry::make(snap.nx, snap.ny));
  for (int c = 0; c < kComponents; ++c) f.comp(c) = snap.component(c);
  return f;
}

namespace {

void put_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
  out.append(b, 8);
}

double get_le(const char* p) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[k])) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string encode_snapshot(const Snapshot& s) {
  const std::size_t n = static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny) * s.ncomp;
  if (s.data.size() != n) throw IoError("snapshot data size does not match its header");
  std::string out = "QLA2D v1 " + std::to_string(s.nx) + " " + std::to_string(s.ny) + " " + std::to_string(s.ncomp) +
                    " " + std::to_string(s.t) + "\n";
  out.reserve(out.size() + 8 * n);
  for (double v : s.data) put_le(out, v);
  return out;
}

Snapshot decode_snapshot(std::string_view bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string_view::npos) throw IoError("snapshot header is not terminated");
  std::istringstream hdr{std::string(bytes.substr(0, nl))};
  std::string magic, version;
  Snapshot s;
  if (!(hdr >> magic >> version >> s.nx >> s.ny >> s.ncomp >> s.t) || magic != "QLA2D" || version != "v1") {
    throw IoError("not a QLA2D v1 snapshot");
  }
  std::string rest;
  if (hdr >> rest) throw IoError("trailing text in snapshot header");
  if (s.nx < 1 || s.ny < 1 || s.ncomp < 1 || s.t < 0) throw IoError("bad snapshot dimensions");
  const std::size_t n = static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny) * s.ncomp;
  if (bytes.size() - nl - 1 != 8 * n) throw IoError("snapshot payload size does not match its header");
  s.data.resize(n);
  const char* p = bytes.data() + nl + 1;
  for (std::size_t k = 0; k < n; ++k) s.data[k] = get_le(p + 8 * k);
  return s;
}

std::vector<unsigned char> render_heatmap(const std::vector<double>& values, HeatmapMapping mapping) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("heatmap input is not finite");
  }
  std::vector<unsigned char> px(values.size(), 0);
  if (values.empty()) return px;
  if (mapping == HeatmapMapping::PositiveClip) {
    double top = 0.0;
    for (double v : values) top = std::max(top, v);
    if (top == 0.0) return px;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
      std::fill(px.begin(), px.end(), 128);
      return px;
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      px[k] = static_cast<unsigned char>(std::lround(255.0 * std::max(values[k], 0.0) / top));
    }
    return px;
  }
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  if (m == 0.0 || std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    std::fill(px.begin(), px.end(), 128);
    return px;
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    px[k] = static_cast<unsigned char>(128 + std::lround(127.0 * values[k] / m));
  }
  return px;
}

std::string encode_pgm(int nx, int ny, const std::vector<unsigned char>& pixels) {
  if (nx < 1 || ny < 1 || pixels.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw std::invalid_argument("pixel count does not match the image size");
  }
  std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  out.reserve(out.size() + pixels.size());
  for (int row = 0; row < ny; ++row) {
    const auto* src = pixels.data() + static_cast<std::size_t>(ny - 1 - row) * nx;
    out.append(reinterpret_cast<const char*>(src), static_cast<std::size_t>(nx));
  }
  return out;
}

}  // namespace qla
