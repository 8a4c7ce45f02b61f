#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <png.h>

#include "dkt/sweep.hpp"
#include "json.hpp"

namespace dkt {

namespace {

void append_number(std::string& s, double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  s.append(buf, res.ptr);
}

// Samples of a perceptually ordered blue-green-yellow map.
std::array<unsigned char, 3> colour(double t) {
  static const double stops[][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37},
  };
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  std::array<unsigned char, 3> out{};
  for (int c = 0; c < 3; ++c) out[c] = static_cast<unsigned char>(stops[i][c] + f * (stops[i + 1][c] - stops[i][c]) + 0.5);
  return out;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open " + path + " for writing");
  out << data;
  out.close();
  if (!out) throw ResourceError("write failed for " + path);
}

}  // namespace

OutputPaths output_paths(const SweepConfig& config) {
  OutputPaths p;
  if (!config.out.empty()) {
    p.csv = config.out + ".csv";
    p.manifest = config.out + ".json";
  }
  p.png = config.png;
  return p;
}

std::string format_csv(const GridResult& r) {
  std::string s;
  bool first = true;
  for (const auto& a : r.axes) {
    if (!first) s += ',';
    s += a.name;
    first = false;
  }
  for (const auto& f : r.fields) {
    if (!first) s += ',';
    s += f;
    first = false;
  }
  s += '\n';

  const std::size_t cells = r.cell_count();
  const std::size_t nf = r.fields.size();
  std::vector<std::size_t> idx(r.axes.size(), 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rem = cell;
    for (std::size_t a = r.axes.size(); a-- > 0;) {
      idx[a] = rem % r.axes[a].values.size();
      rem /= r.axes[a].values.size();
    }
    for (std::size_t a = 0; a < r.axes.size(); ++a) {
      if (a > 0) s += ',';
      append_number(s, r.axes[a].values[idx[a]]);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      if (!r.axes.empty() || f > 0) s += ',';
      append_number(s, r.values[cell * nf + f]);
    }
    s += '\n';
  }
  return s;
}

std::string format_manifest(const GridResult& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  std::istringstream lines(r.config);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
  }
  j["config"] = cfg;
  j["config_hash"] = r.manifest.config_hash;
  j["version"] = r.manifest.version;
  j["timestamp"] = r.manifest.timestamp;
  j["workers"] = r.manifest.workers;
  j["total_kicks"] = r.manifest.total_kicks;
  j["elapsed_seconds"] = r.manifest.elapsed_seconds;
  j["status"] = r.manifest.status;
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& a : r.axes) axes.push_back({{"name", a.name}, {"length", a.values.size()}});
  j["axes"] = axes;
  j["fields"] = r.fields;
  for (const auto& [k, v] : r.manifest.extra) j["extra"][k] = v;
  return j.dump(2) + "\n";
}

void write_png(const GridResult& r, const std::string& path) {
  if (r.axes.empty() || r.axes.size() > 2 || r.values.empty()) {
    throw DomainError("heatmap needs a one- or two-axis result with data");
  }
  const int rows = static_cast<int>(r.axes[0].values.size());
  const int cols = r.axes.size() == 2 ? static_cast<int>(r.axes[1].values.size()) : 1;
  const std::size_t nf = r.fields.size();
  double lo = r.values[0], hi = r.values[0];
  for (std::size_t c = 0; c < r.cell_count(); ++c) {
    lo = std::min(lo, r.values[c * nf]);
    hi = std::max(hi, r.values[c * nf]);
  }
  const int scale = std::max(1, 256 / std::max(rows, cols));
  const int width = cols * scale, height = rows * scale;

  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw ResourceError("cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw ResourceError("PNG encoding failed for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(width) * 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double v = r.values[(static_cast<std::size_t>(y / scale) * cols + x / scale) * nf];
      const auto c = colour(hi > lo ? (v - lo) / (hi - lo) : 0.0);
      std::copy(c.begin(), c.end(), row.begin() + 3 * x);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw ResourceError("write failed for " + path);
}

void write_outputs(const GridResult& r, const OutputPaths& paths) {
  if (!paths.csv.empty()) write_file(paths.csv, format_csv(r));
  if (!paths.manifest.empty()) write_file(paths.manifest, format_manifest(r));
  if (!paths.png.empty()) write_png(r, paths.png);
}

}  // namespace dkt
