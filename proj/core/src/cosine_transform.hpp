#pragma once

#include <span>

#include "chemotaxis/grid.hpp"

namespace chemotaxis::detail {

/// In-place DCT-II / DCT-III pair over all axes of a grid. The cosine modes
/// cos(πk(i+½)/n) are exact eigenvectors of the mirror-ghost Laplacian.
/// forward() then backward() multiplies by Π_axis 2n.
class CosineTransform {
 public:
  explicit CosineTransform(const Grid& grid);

  void forward(std::span<double> data) const;
  void backward(std::span<double> data) const;
  double roundtrip_scale() const { return scale_; }

 private:
  const void* forward_plan_;
  const void* backward_plan_;
  double scale_;
};

}  // namespace chemotaxis::detail
