#include "chemotaxis/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "chemotaxis/errors.hpp"

namespace chemotaxis {

Grid::Grid(BoxDomain domain, std::array<int, 2> cells) : domain_(domain), cells_(cells) {
  if (domain.dim != 1 && domain.dim != 2) throw PreconditionError("grid dimension must be 1 or 2");
  if (domain.dim == 1) {
    cells_[1] = 1;
    domain_.lengths[1] = 1.0;
  }
  for (int d = 0; d < domain.dim; ++d) {
    const auto du = static_cast<std::size_t>(d);
    if (!(domain_.lengths[du] > 0.0) || !std::isfinite(domain_.lengths[du]))
      throw PreconditionError("domain lengths must be positive");
    if (cells_[du] < 4) throw PreconditionError("grid needs at least 4 cells per axis");
  }
  spacing_ = {domain_.lengths[0] / cells_[0], domain_.lengths[1] / cells_[1]};
}

std::size_t Grid::face_count(int axis) const {
  if (axis == 0) return static_cast<std::size_t>(nx() + 1) * static_cast<std::size_t>(ny());
  if (dim() == 1) return 0;
  return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny() + 1);
}

// ---------------------------------------------------------------- Field

Field::Field(Grid grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw PreconditionError("field size does not match grid");
}

Field Field::from_function(const Grid& grid, const std::function<double(double, double)>& f) {
  Field out(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    const double y = grid.dim() == 2 ? grid.center(1, j) : 0.0;
    for (int i = 0; i < grid.nx(); ++i) out.at(i, j) = f(grid.center(0, i), y);
  }
  return out;
}

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw PreconditionError("fields live on different grids");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double s, Field f) { return f *= s; }

// ---------------------------------------------------------------- FaceField

FaceField::FaceField(Grid grid) : grid_(grid) {
  comps_[0].assign(grid_.face_count(0), 0.0);
  comps_[1].assign(grid_.face_count(1), 0.0);
}

// ---------------------------------------------------------------- operators

FaceField gradient_faces(const Field& f) {
  const Grid& g = f.grid();
  FaceField out(g);
  const double inv_hx = 1.0 / g.hx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) out.x(i, j) = (f.at(i, j) - f.at(i - 1, j)) * inv_hx;
  if (g.dim() == 2) {
    const double inv_hy = 1.0 / g.hy();
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out.y(i, j) = (f.at(i, j) - f.at(i, j - 1)) * inv_hy;
  }
  return out;
}

Field divergence(const FaceField& flux) {
  const Grid& g = flux.grid();
  Field out(g);
  const double inv_hx = 1.0 / g.hx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out.at(i, j) = (flux.x(i + 1, j) - flux.x(i, j)) * inv_hx;
  if (g.dim() == 2) {
    const double inv_hy = 1.0 / g.hy();
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out.at(i, j) += (flux.y(i, j + 1) - flux.y(i, j)) * inv_hy;
  }
  return out;
}

Field laplacian_neumann(const Field& f) { return divergence(gradient_faces(f)); }

FaceField face_average(const Field& f) {
  const Grid& g = f.grid();
  FaceField out(g);
  for (int j = 0; j < g.ny(); ++j) {
    out.x(0, j) = f.at(0, j);
    out.x(g.nx(), j) = f.at(g.nx() - 1, j);
    for (int i = 1; i < g.nx(); ++i) out.x(i, j) = 0.5 * (f.at(i - 1, j) + f.at(i, j));
  }
  if (g.dim() == 2) {
    for (int i = 0; i < g.nx(); ++i) {
      out.y(i, 0) = f.at(i, 0);
      out.y(i, g.ny()) = f.at(i, g.ny() - 1);
      for (int j = 1; j < g.ny(); ++j) out.y(i, j) = 0.5 * (f.at(i, j - 1) + f.at(i, j));
    }
  }
  return out;
}

double face_inner(const FaceField& a, const FaceField& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("face fields live on different grids");
  double sum = 0.0;
  for (int axis = 0; axis < a.grid().dim(); ++axis) {
    const auto ca = a.component(axis);
    const auto cb = b.component(axis);
    for (std::size_t k = 0; k < ca.size(); ++k) sum += ca[k] * cb[k];
  }
  return sum * a.grid().cell_volume();
}

FaceField face_map(const FaceField& a, const FaceField& b,
                   const std::function<double(double, double)>& f) {
  if (!(a.grid() == b.grid())) throw PreconditionError("face fields live on different grids");
  const Grid& g = a.grid();
  FaceField out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) out.x(i, j) = f(a.x(i, j), b.x(i, j));
  if (g.dim() == 2)
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out.y(i, j) = f(a.y(i, j), b.y(i, j));
  return out;
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  double sum = 0.0;
  if (p == 1.0) {
    for (double x : f.values()) sum += std::abs(x);
    return sum * f.grid().cell_volume();
  }
  if (p == 2.0) {
    for (double x : f.values()) sum += x * x;
    return std::sqrt(sum * f.grid().cell_volume());
  }
  for (double x : f.values()) sum += std::pow(std::abs(x), p);
  return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

double mass(const Field& f) {
  double sum = 0.0;
  for (double x : f.values()) sum += x;
  return sum * f.grid().cell_volume();
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid());
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) sum += f[k] * g[k];
  return sum * f.grid().cell_volume();
}

Field reflect(const Field& f, int axis) {
  const Grid& g = f.grid();
  Field out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out.at(i, j) = axis == 0 ? f.at(g.nx() - 1 - i, j) : f.at(i, g.ny() - 1 - j);
  return out;
}

}  // namespace chemotaxis
