#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "viscolab/domain.hpp"
#include "viscolab/geometry.hpp"

namespace viscolab {

/// One stencil arm: the node reached from a given node along +/- a line
/// direction, together with the arm length. len < full step means the arm was
/// cut at the exact boundary and `node` is a boundary node.
struct Arm {
  int node = -1;
  double len = 0.0;
  bool cut = false;
};

/// Uniform Cartesian grid over a Domain with node masks and cut-cell boundary
/// snapping. Interior nodes are the lattice points strictly inside the
/// domain; boundary nodes are created where stencil arms from interior nodes
/// hit the boundary (lattice points on flat boundary pieces land there
/// exactly). Arms are precomputed for the full direction dictionary, so one
/// grid serves every stencil width m in {4, 8, 16}.
///
/// Node ids: [0, n_interior) interior, [n_interior, n_nodes) boundary.
class Grid {
 public:
  static std::shared_ptr<const Grid> build(const Domain& domain, double h);

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  double h() const { return h_; }

  int n_interior() const { return static_cast<int>(interior_pos_.size()); }
  int n_boundary() const { return static_cast<int>(boundary_pos_.size()); }
  int n_nodes() const { return n_interior() + n_boundary(); }
  bool is_interior(int id) const { return id < n_interior(); }

  Point pos(int id) const {
    return is_interior(id) ? interior_pos_[id]
                           : boundary_pos_[id - n_interior()];
  }
  BoundaryPortion portion(int id) const {
    return boundary_portion_[id - n_interior()];
  }

  /// Line directions of the full dictionary: 1 in 1D; 8 in 2D
  /// (2 axes, 2 diagonals, 4 knight directions).
  int n_line_dirs() const { return static_cast<int>(dirs_.size()); }
  Point dir_unit(int k) const { return dir_unit_[k]; }
  double dir_step(int k) const { return dir_step_[k]; }

  /// side 0 = +direction, side 1 = -direction.
  const Arm& arm(int interior_id, int k, int side) const {
    return arms_[(static_cast<size_t>(interior_id) * dirs_.size() + k) * 2 +
                 side];
  }

  /// Orthogonal frames for a stencil of m points: list of direction-index
  /// tuples (1 entry in 1D, 2 in 2D). m must be 4, 8 or 16 in 2D.
  std::vector<std::vector<int>> frames(int m) const;

  /// Direction indices entering a stencil of m points.
  std::vector<int> dirs_for(int m) const;

  /// Node exactly at p (lattice or boundary), if any.
  std::optional<int> node_at(Point p) const;

  Point lattice_origin() const { return origin_; }

 private:
  Grid(const Domain& d, double h) : domain_(d), h_(h) {}

  Domain domain_;
  double h_;
  Point origin_{0, 0};

  std::vector<Point> interior_pos_;
  std::vector<Point> boundary_pos_;
  std::vector<BoundaryPortion> boundary_portion_;
  std::vector<Arm> arms_;

  std::vector<std::array<int, 2>> dirs_;  // lattice vectors
  std::vector<Point> dir_unit_;
  std::vector<double> dir_step_;

  std::unordered_map<std::uint64_t, int> lattice_index_;  // (i,j) -> interior id
  std::unordered_map<std::uint64_t, int> boundary_index_;  // quantized pos -> id
};

using GridPtr = std::shared_ptr<const Grid>;

/// Scalar field sampled on every node of a Grid.
class GridFunction {
 public:
  explicit GridFunction(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->n_nodes(), 0.0) {}

  static GridFunction sample(GridPtr grid,
                             const std::function<double(Point)>& f);

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }

  double& operator[](int id) { return values_[id]; }
  double operator[](int id) const { return values_[id]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double max_all() const;
  double min_all() const;
  double max_interior() const;
  double min_interior() const;
  double max_boundary() const;
  double min_boundary() const;
  double sup_norm() const;  // max |u| over all nodes

  /// Piecewise-(bi)linear interpolation on the lattice; falls back to the
  /// nearest stored node when a cell corner is missing (near curved
  /// boundaries).
  double interpolate(Point p) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

}  // namespace viscolab
