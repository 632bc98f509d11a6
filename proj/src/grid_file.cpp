#include "funksphere/grid_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "funksphere/errors.hpp"

namespace funksphere {

using nlohmann::json;

std::size_t payload_size(int d, int L, int M) {
  const auto l = static_cast<std::size_t>(L), m = static_cast<std::size_t>(M);
  return d == 4 ? l * l * m : l * m;
}

void write_grid_file(std::ostream& out, const GridFileHeader& header, std::span<const double> values) {
  if (values.size() != payload_size(header.d, header.L, header.M))
    throw FormatError("payload length does not match the grid in the header");
  json h;
  h["format_version"] = kGridFormatVersion;
  h["d"] = header.d;
  h["grid"] = {{"type", kGridType}, {"L", header.L}, {"M", header.M}};
  h["z"] = header.z ? json(*header.z) : json(nullptr);
  h["description"] = header.description;
  out << h.dump() << '\n';
  char buf[64];
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError("grid function values must be finite");
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
    out.put('\n');
  }
  if (!out) throw FormatError("failed writing grid function");
}

void write_grid_file(const std::filesystem::path& path, const GridFileHeader& header,
                     std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_grid_file(out, header, values);
}

GridFunctionFile read_grid_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing header line");
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("header is not valid JSON: ") + e.what());
  }

  GridFunctionFile file;
  try {
    if (h.at("format_version").get<std::string>() != kGridFormatVersion)
      throw FormatError("unsupported format_version " + h.at("format_version").dump());
    const json& grid = h.at("grid");
    if (grid.at("type").get<std::string>() != kGridType)
      throw FormatError("unsupported grid type " + grid.at("type").dump());
    file.header.d = h.at("d").get<int>();
    file.header.L = grid.at("L").get<int>();
    file.header.M = grid.at("M").get<int>();
    if (h.contains("z") && !h.at("z").is_null()) file.header.z = h.at("z").get<double>();
    if (h.contains("description")) file.header.description = h.at("description").get<std::string>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad header field: ") + e.what());
  }
  const auto& hd = file.header;
  if (hd.d != 3 && hd.d != 4) throw FormatError("header d must be 3 or 4");
  if (hd.L < 2 || hd.M < 2) throw FormatError("header grid resolution needs L, M >= 2");

  const std::size_t expected = payload_size(hd.d, hd.L, hd.M);
  file.values.reserve(expected);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
      throw FormatError("bad payload value '" + token + "'");
    if (!std::isfinite(v)) throw FormatError("non-finite payload value '" + token + "'");
    file.values.push_back(v);
  }
  if (file.values.size() != expected)
    throw FormatError("payload has " + std::to_string(file.values.size()) + " values, grid needs " +
                      std::to_string(expected));
  return file;
}

GridFunctionFile read_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_grid_file(in);
}

GridFunction to_grid_function(const GridFunctionFile& file) {
  return GridFunction(sphere_grid(file.header.d, file.header.L, file.header.M), file.values);
}

GridFileHeader header_for(const SphereGrid& grid, std::optional<double> z, std::string description) {
  return GridFileHeader{grid.dim(), grid.L(), grid.M(), z, std::move(description)};
}

}  // namespace funksphere
