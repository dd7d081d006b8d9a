#pragma once

#include <vector>

namespace ptcrum {

/// Uniform grid on [-L, L] with an odd number of points, so x = 0 is a node
/// and x -> -x maps nodes onto nodes exactly.
class Grid {
 public:
  Grid(double half_width, int points);

  double half_width() const { return half_width_; }
  int points() const { return points_; }
  double spacing() const { return spacing_; }
  int interior_points() const { return points_ - 2; }

  double node(int i) const;
  std::vector<double> nodes() const;
  /// Nodes without the two Dirichlet end points.
  std::vector<double> interior_nodes() const;

  /// Same box, (points - 1) * factor + 1 points.
  Grid refined(int factor) const;

 private:
  double half_width_;
  int points_;
  double spacing_;
};

}  // namespace ptcrum
