#include "ptcrum/grid.hpp"

#include <cmath>
#include <string>

#include "ptcrum/errors.hpp"

namespace ptcrum {

Grid::Grid(double half_width, int points) : half_width_(half_width), points_(points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidGrid("grid half width must be positive and finite");
  }
  if (points < 5 || points % 2 == 0) {
    throw InvalidGrid("grid point count must be odd and at least 5, got " + std::to_string(points));
  }
  spacing_ = 2.0 * half_width / (points - 1);
}

double Grid::node(int i) const {
  // symmetric construction: node(i) == -node(points - 1 - i) bit for bit
  const int mid = (points_ - 1) / 2;
  return (i - mid) * spacing_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(points_);
  for (int i = 0; i < points_; ++i) xs[i] = node(i);
  return xs;
}

std::vector<double> Grid::interior_nodes() const {
  std::vector<double> xs(points_ - 2);
  for (int i = 1; i + 1 < points_; ++i) xs[i - 1] = node(i);
  return xs;
}

Grid Grid::refined(int factor) const {
  if (factor < 1) throw InvalidGrid("refinement factor must be >= 1");
  return Grid{half_width_, (points_ - 1) * factor + 1};
}

}  // namespace ptcrum
