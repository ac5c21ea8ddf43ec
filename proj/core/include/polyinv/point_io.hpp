#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyinv/fitting.hpp"

namespace polyinv {

/// Reads `x1,...,xn[,value[,weight]]` rows. Missing value or weight default
/// to 1; `#` lines and blank lines are skipped. Without an explicit
/// dimension, n is the column count of the first data row.
PointCloud read_point_csv(std::istream& in, std::optional<int> dimension = std::nullopt);

/// Writes one `x1,...,xn,value,weight` row per point, preceded by
/// `# `-prefixed comment lines.
void write_point_csv(std::ostream& out, const PointCloud& cloud,
                     const std::vector<std::string>& comments = {});

enum class ValueSource { one, mass };

/// Standard atomic weight for H, C, N, O, S, P, F, Cl, Br, I.
std::optional<double> atomic_mass(std::string_view element);

struct Molecule {
  std::vector<std::string> elements;
  std::string comment;
  PointCloud cloud;
};

/// XYZ format: atom count, comment line, then `El x y z` rows.
Molecule read_xyz(std::istream& in, ValueSource source = ValueSource::mass);

void write_xyz(std::ostream& out, const std::vector<std::string>& elements,
               const PointCloud& cloud, std::string_view comment);

}  // namespace polyinv
