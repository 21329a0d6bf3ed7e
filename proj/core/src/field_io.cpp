#include "chemotaxis/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chemotaxis {

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

[[noreturn]] void malformed(const std::string& what) {
  throw std::runtime_error("malformed field snapshot: " + what);
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& field, double t) {
  const Grid& g = field.grid();
  os << "# grid " << g.nx();
  if (g.dim() == 2) os << ',' << g.ny();
  os << ' ' << g17(g.hx());
  if (g.dim() == 2) os << ',' << g17(g.hy());
  os << " t=" << g17(t) << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (i > 0) os << ',';
      os << g17(field.at(i, j));
    }
    os << '\n';
  }
}

Snapshot read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) malformed("missing header");
  std::istringstream hs(header);
  std::string hash, tag, cells_text, spacing_text, time_text;
  if (!(hs >> hash >> tag >> cells_text >> spacing_text >> time_text) || hash != "#" || tag != "grid")
    malformed("header must read '# grid nx[,ny] hx[,hy] t=<time>'");
  if (time_text.rfind("t=", 0) != 0) malformed("missing t=");

  const auto cells = split(cells_text, ',');
  const auto spacing = split(spacing_text, ',');
  if (cells.empty() || cells.size() > 2 || cells.size() != spacing.size()) malformed("grid sizes");
  double t = 0.0;
  std::array<int, 2> n{1, 1};
  std::array<double, 2> h{1.0, 1.0};
  try {
    t = std::stod(time_text.substr(2));
    for (std::size_t d = 0; d < cells.size(); ++d) {
      n[d] = std::stoi(cells[d]);
      h[d] = std::stod(spacing[d]);
    }
  } catch (const std::exception&) {
    malformed("non-numeric header field");
  }
  const int dim = static_cast<int>(cells.size());
  Grid grid({dim, {n[0] * h[0], dim == 2 ? n[1] * h[1] : 1.0}}, n);

  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto items = split(line, ',');
    if (static_cast<int>(items.size()) != n[0]) malformed("row length");
    for (const auto& item : items) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        malformed("non-numeric value '" + item + "'");
      }
    }
    ++rows;
  }
  if (rows != n[1]) malformed("row count");
  return Snapshot{t, Field(grid, std::move(values))};
}

Snapshot read_snapshot_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open snapshot file '" + path + "'");
  return read_snapshot(is);
}

void write_snapshot_file(const std::string& path, const Field& field, double t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write snapshot file '" + path + "'");
  write_snapshot(os, field, t);
}

}  // namespace chemotaxis
