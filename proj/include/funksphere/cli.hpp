#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "funksphere/quadrature.hpp"

namespace funksphere {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;  // bad flags, unreadable or malformed files, domain errors
inline constexpr int not_in_range = 2;
inline constexpr int verification_failed = 3;
}  // namespace exit_code

/// A test function selected by name on the command line.
struct BuiltinFunction {
  SphereFunction f;
  std::optional<double> z;  // set by symmetric_z
};

/// Parses const, const(c), coord_d, coord_d_sq, gauss_bump(c_1, ..., c_d, width),
/// gauss_bump(width), harmonic(n, k) and symmetric_z(z, seed, N). Arguments may
/// carry a "name=" prefix. Throws DomainError on anything else.
BuiltinFunction parse_function(std::string_view spec, int d);

/// Entry point of the funksphere tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace funksphere
