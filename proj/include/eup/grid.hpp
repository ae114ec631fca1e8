#pragma once

#include <span>
#include <vector>

namespace eup {

/// Uniform grid on [epsilon0, 1] with N cells and exact endpoints.
class Grid {
 public:
  Grid(double epsilon0, int cells);

  int cells() const { return cells_; }
  double spacing() const { return spacing_; }
  double epsilon0() const { return nodes_.front(); }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  int cells_;
  double spacing_;
  std::vector<double> nodes_;
};

/// Composite trapezoid rule over the grid; exact for affine integrands.
double trapezoid(std::span<const double> values, const Grid& grid);

}  // namespace eup
