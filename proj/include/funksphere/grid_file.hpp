#pragma once

// On-disk grid function format.
//
// Line 1 is a JSON header:
//   {"format_version":"1","d":3,"grid":{"type":"gauss-uniform","L":16,"M":16},
//    "z":null,"description":"..."}
// followed by one value per line in node order of sphere_grid(d, L, M)
// (latitude-major, longitude-minor). Values are written in shortest
// round-trip form, so write followed by read reproduces them bit for bit.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "funksphere/quadrature.hpp"

namespace funksphere {

inline constexpr const char* kGridFormatVersion = "1";
inline constexpr const char* kGridType = "gauss-uniform";

struct GridFileHeader {
  int d = 3;
  int L = 0;
  int M = 0;
  std::optional<double> z;
  std::string description;
};

struct GridFunctionFile {
  GridFileHeader header;
  std::vector<double> values;
};

/// Number of payload values for a grid: L*M (d = 3) or L*L*M (d = 4).
std::size_t payload_size(int d, int L, int M);

void write_grid_file(std::ostream& out, const GridFileHeader& header, std::span<const double> values);
void write_grid_file(const std::filesystem::path& path, const GridFileHeader& header,
                     std::span<const double> values);

/// Throws FormatError on any malformed header or payload.
GridFunctionFile read_grid_file(std::istream& in);
GridFunctionFile read_grid_file(const std::filesystem::path& path);

GridFunction to_grid_function(const GridFunctionFile& file);
GridFileHeader header_for(const SphereGrid& grid, std::optional<double> z, std::string description);

}  // namespace funksphere
