#include "eup/grid.hpp"

#include <stdexcept>

namespace eup {

Grid::Grid(double epsilon0, int cells) : cells_(cells) {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
    throw std::invalid_argument("grid: epsilon0 must lie in (0, 1)");
  if (cells < 8) throw std::invalid_argument("grid: need at least 8 cells");
  spacing_ = (1.0 - epsilon0) / cells;
  nodes_.resize(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i)
    nodes_[static_cast<std::size_t>(i)] = epsilon0 + i * spacing_;
  nodes_.front() = epsilon0;
  nodes_.back() = 1.0;
}

double trapezoid(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.nodes().size())
    throw std::invalid_argument("trapezoid: one value per node required");
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * grid.spacing();
}

}  // namespace eup
