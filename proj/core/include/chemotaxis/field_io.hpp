#pragma once

#include <iosfwd>
#include <string>

#include "chemotaxis/grid.hpp"

namespace chemotaxis {

struct Snapshot {
  double t;
  Field field;
};

/// Writes `# grid nx[,ny] hx[,hy] t=<time>` followed by one row of
/// comma-separated values per y-line, 17 significant digits.
void write_snapshot(std::ostream& os, const Field& field, double t);

/// Reads the format written by write_snapshot. Domain lengths are recovered
/// as n*h. Throws std::runtime_error on malformed input.
Snapshot read_snapshot(std::istream& is);

Snapshot read_snapshot_file(const std::string& path);
void write_snapshot_file(const std::string& path, const Field& field, double t);

}  // namespace chemotaxis
