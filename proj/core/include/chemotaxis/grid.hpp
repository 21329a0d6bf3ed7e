#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace chemotaxis {

/// Axis-aligned box [0, L_x] (× [0, L_y]).
struct BoxDomain {
  int dim = 1;
  std::array<double, 2> lengths{1.0, 1.0};

  double measure() const { return dim == 1 ? lengths[0] : lengths[0] * lengths[1]; }
  bool operator==(const BoxDomain&) const = default;
};

/// Uniform cell-centered grid with homogeneous Neumann (mirror ghost) boundary.
/// Cells are stored row-major: index = j * nx + i, x varies fastest.
class Grid {
 public:
  Grid(BoxDomain domain, std::array<int, 2> cells);
  static Grid line(double length, int cells) { return Grid({1, {length, 1.0}}, {cells, 1}); }
  static Grid rectangle(double lx, double ly, int nx, int ny) { return Grid({2, {lx, ly}}, {nx, ny}); }

  int dim() const { return domain_.dim; }
  const BoxDomain& domain() const { return domain_; }
  int nx() const { return cells_[0]; }
  int ny() const { return cells_[1]; }
  int cells(int axis) const { return cells_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double hx() const { return spacing_[0]; }
  double hy() const { return spacing_[1]; }
  std::size_t size() const { return static_cast<std::size_t>(cells_[0]) * static_cast<std::size_t>(cells_[1]); }
  double cell_volume() const { return dim() == 1 ? spacing_[0] : spacing_[0] * spacing_[1]; }
  double measure() const { return domain_.measure(); }
  double min_spacing() const { return dim() == 1 ? spacing_[0] : std::min(spacing_[0], spacing_[1]); }

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_[0]) + static_cast<std::size_t>(i);
  }
  double center(int axis, int i) const { return (i + 0.5) * spacing(axis); }

  /// Number of faces normal to `axis`, boundary faces included.
  std::size_t face_count(int axis) const;

  bool operator==(const Grid&) const = default;

 private:
  BoxDomain domain_;
  std::array<int, 2> cells_;
  std::array<double, 2> spacing_;
};

/// One real value per cell.
class Field {
 public:
  explicit Field(Grid grid, double fill = 0.0);
  Field(Grid grid, std::vector<double> values);

  /// Samples f at cell centers; f receives (x, y), y = 0 in 1D.
  static Field from_function(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& at(int i, int j = 0) { return values_[grid_.index(i, j)]; }
  double at(int i, int j = 0) const { return values_[grid_.index(i, j)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double max() const;
  double min() const;
  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  bool operator==(const Field&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double s, Field f);

/// Face-centered vector field: component `axis` lives on faces normal to it.
/// x-faces are indexed j * (nx+1) + i (face i is the left face of cell i);
/// y-faces are indexed j * nx + i (face j is the lower face of row j).
class FaceField {
 public:
  explicit FaceField(Grid grid);

  const Grid& grid() const { return grid_; }
  std::span<double> component(int axis) { return comps_[static_cast<std::size_t>(axis)]; }
  std::span<const double> component(int axis) const { return comps_[static_cast<std::size_t>(axis)]; }
  double& x(int i, int j = 0) { return comps_[0][static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nx() + 1) + static_cast<std::size_t>(i)]; }
  double x(int i, int j = 0) const { return comps_[0][static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nx() + 1) + static_cast<std::size_t>(i)]; }
  double& y(int i, int j) { return comps_[1][grid_.index(i, j)]; }
  double y(int i, int j) const { return comps_[1][grid_.index(i, j)]; }

  bool operator==(const FaceField&) const = default;

 private:
  Grid grid_;
  std::array<std::vector<double>, 2> comps_;
};

/// Five-point (three-point in 1D) Laplacian with mirror ghosts; the discrete
/// normal derivative vanishes on every boundary face.
Field laplacian_neumann(const Field& f);

/// (f_{i+1} − f_i)/h on interior faces, 0 on boundary faces.
FaceField gradient_faces(const Field& f);

/// Cell divergence of a face field: Σ_axis (F_{right} − F_{left}) / h_axis.
Field divergence(const FaceField& flux);

/// Arithmetic mean of the two adjacent cells; boundary faces copy the interior cell.
FaceField face_average(const Field& f);

/// Σ over all faces of a·b times the cell volume (the face quadrature that pairs
/// with laplacian_neumann in summation by parts).
double face_inner(const FaceField& a, const FaceField& b);

/// Pointwise map over interior faces only (boundary faces stay 0).
FaceField face_map(const FaceField& a, const FaceField& b,
                   const std::function<double(double, double)>& f);

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Midpoint quadrature (Σ |f|^p h^N)^{1/p}; p = kInfinityNorm gives max |f|.
double lp_norm(const Field& f, double p);

/// Midpoint quadrature of f.
double mass(const Field& f);

/// Σ f g h^N.
double inner(const Field& f, const Field& g);

/// Reflect across the midline of `axis` (x ↦ L − x).
Field reflect(const Field& f, int axis);

}  // namespace chemotaxis
