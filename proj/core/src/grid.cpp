#include "viscolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace viscolab {
namespace {

constexpr double kLatticeTol = 1e-9;   // relative to h
constexpr double kMinArmFrac = 1e-6;   // shortest admissible cut arm, in steps

std::uint64_t pack_lattice(int i, int j) {
  constexpr std::uint64_t bias = 1u << 30;
  return ((static_cast<std::uint64_t>(i) + bias) << 32) |
         (static_cast<std::uint64_t>(j) + bias);
}

}  // namespace

std::shared_ptr<const Grid> Grid::build(const Domain& domain, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("Grid: h must be > 0");

  // Lattice alignment: interval/rectangle lattices span the box exactly
  // (h is adjusted to the nearest commensurate value); disc lattices are
  // centered so the disc center is a node; half-disc lattices put the flat
  // boundary {y = -nu} on a lattice row.
  Point origin{0, 0};
  double h_eff = h;
  switch (domain.shape()) {
    case Domain::Shape::Interval:
    case Domain::Shape::Rectangle: {
      double span = domain.box_hi()[0] - domain.box_lo()[0];
      int n = std::max(1, static_cast<int>(std::lround(span / h)));
      h_eff = span / n;
      if (domain.dim() == 2) {
        double span_y = domain.box_hi()[1] - domain.box_lo()[1];
        double ny = span_y / h_eff;
        if (std::abs(ny - std::lround(ny)) > 1e-9)
          throw std::invalid_argument(
              "Grid: rectangle extents are not commensurate with h");
      }
      origin = domain.box_lo();
      break;
    }
    case Domain::Shape::Disc:
      origin = domain.center();
      break;
    case Domain::Shape::HalfDisc:
      origin = pt(0.0, -domain.nu());
      break;
  }

  auto grid = std::shared_ptr<Grid>(new Grid(domain, h_eff));
  grid->origin_ = origin;

  if (domain.dim() == 1) {
    grid->dirs_ = {{1, 0}};
  } else {
    grid->dirs_ = {{1, 0}, {0, 1}, {1, 1},  {1, -1},
                   {2, 1}, {1, 2}, {-1, 2}, {2, -1}};
  }
  for (auto& d : grid->dirs_) {
    double len = std::hypot(static_cast<double>(d[0]),
                            static_cast<double>(d[1]));
    grid->dir_unit_.push_back(pt(d[0] / len, d[1] / len));
    grid->dir_step_.push_back(h_eff * len);
  }

  // Interior nodes: lattice points strictly inside the domain.
  Point lo = domain.box_lo(), hi = domain.box_hi();
  int i_lo = static_cast<int>(std::ceil((lo[0] - origin[0]) / h_eff - kLatticeTol));
  int i_hi = static_cast<int>(std::floor((hi[0] - origin[0]) / h_eff + kLatticeTol));
  int j_lo = 0, j_hi = 0;
  if (domain.dim() == 2) {
    j_lo = static_cast<int>(std::ceil((lo[1] - origin[1]) / h_eff - kLatticeTol));
    j_hi = static_cast<int>(std::floor((hi[1] - origin[1]) / h_eff + kLatticeTol));
  }

  for (int i = i_lo; i <= i_hi; ++i) {
    for (int j = j_lo; j <= j_hi; ++j) {
      Point p = origin + pt(i * h_eff, j * h_eff);
      if (domain.dim() == 1) p[1] = 0.0;
      if (!domain.contains(p)) continue;
      grid->lattice_index_[pack_lattice(i, j)] =
          static_cast<int>(grid->interior_pos_.size());
      grid->interior_pos_.push_back(p);
    }
  }
  if (grid->interior_pos_.empty())
    throw std::invalid_argument("Grid: no interior nodes at this h");

  // Recover lattice coordinates per interior node for arm construction.
  std::vector<std::array<int, 2>> coords(grid->interior_pos_.size());
  for (auto& [key, id] : grid->lattice_index_) {
    constexpr std::uint64_t bias = 1u << 30;
    coords[id] = {static_cast<int>((key >> 32) - bias),
                  static_cast<int>((key & 0xffffffffu) - bias)};
  }

  // Boundary nodes are deduplicated on a quantized lattice-relative key.
  std::map<std::pair<std::int64_t, std::int64_t>, int> bmap;
  auto boundary_id = [&](Point q) {
    auto key = std::make_pair(
        std::llround((q[0] - origin[0]) / h_eff * 1e6),
        std::llround((q[1] - origin[1]) / h_eff * 1e6));
    auto it = bmap.find(key);
    if (it != bmap.end()) return it->second;
    int id = static_cast<int>(grid->boundary_pos_.size());
    bmap.emplace(key, id);
    grid->boundary_pos_.push_back(q);
    grid->boundary_portion_.push_back(domain.classify_boundary(q));
    return id;
  };

  size_t ndirs = grid->dirs_.size();
  grid->arms_.resize(grid->interior_pos_.size() * ndirs * 2);
  for (size_t n = 0; n < grid->interior_pos_.size(); ++n) {
    Point p = grid->interior_pos_[n];
    for (size_t k = 0; k < ndirs; ++k) {
      for (int side = 0; side < 2; ++side) {
        int sgn = side == 0 ? 1 : -1;
        int ti = coords[n][0] + sgn * grid->dirs_[k][0];
        int tj = coords[n][1] + sgn * grid->dirs_[k][1];
        Arm arm;
        auto it = grid->lattice_index_.find(pack_lattice(ti, tj));
        if (it != grid->lattice_index_.end()) {
          arm = {it->second, grid->dir_step_[k], false};
        } else {
          Point step = pt(sgn * grid->dirs_[k][0] * h_eff,
                          sgn * grid->dirs_[k][1] * h_eff);
          auto t = domain.ray_exit(p, step);
          double tc = t ? std::min(*t, 1.0) : 1.0;
          tc = std::max(tc, kMinArmFrac);
          Point q = p + tc * step;
          if (domain.dim() == 1) q[1] = 0.0;
          // Boundary ids are temporarily encoded as negative and shifted to
          // global ids once n_interior is final.
          arm = {-(boundary_id(q) + 1), tc * grid->dir_step_[k],
                 tc < 1.0 - 1e-12};
        }
        grid->arms_[(n * ndirs + k) * 2 + side] = arm;
      }
    }
  }

  // Boundary ids were assigned in [0, n_boundary); shift to global ids.
  int nb_off = grid->n_interior();
  for (auto& arm : grid->arms_)
    if (arm.node < 0) arm.node = -(arm.node + 1) + nb_off;
  for (auto& [key, id] : bmap) {
    std::uint64_t k64 = (static_cast<std::uint64_t>(
                             static_cast<std::uint32_t>(key.first)) << 32) ^
                        static_cast<std::uint32_t>(key.second);
    grid->boundary_index_[k64] = id + nb_off;
  }

  return grid;
}

std::vector<std::vector<int>> Grid::frames(int m) const {
  if (dim() == 1) return {{0}};
  switch (m) {
    case 4:
      return {{0, 1}};
    case 8:
      return {{0, 1}, {2, 3}};
    case 16:
      return {{0, 1}, {2, 3}, {4, 6}, {5, 7}};
    default:
      throw std::invalid_argument("Grid: stencil m must be 4, 8 or 16");
  }
}

std::vector<int> Grid::dirs_for(int m) const {
  if (dim() == 1) return {0};
  switch (m) {
    case 4:
      return {0, 1};
    case 8:
      return {0, 1, 2, 3};
    case 16:
      return {0, 1, 2, 3, 4, 5, 6, 7};
    default:
      throw std::invalid_argument("Grid: stencil m must be 4, 8 or 16");
  }
}

std::optional<int> Grid::node_at(Point p) const {
  double ri = (p[0] - origin_[0]) / h_;
  double rj = dim() == 2 ? (p[1] - origin_[1]) / h_ : 0.0;
  double fi = std::abs(ri - std::lround(ri));
  double fj = std::abs(rj - std::lround(rj));
  if (fi < kLatticeTol && fj < kLatticeTol) {
    auto it = lattice_index_.find(pack_lattice(
        static_cast<int>(std::lround(ri)), static_cast<int>(std::lround(rj))));
    if (it != lattice_index_.end()) return it->second;
  }
  std::uint64_t k64 =
      (static_cast<std::uint64_t>(
           static_cast<std::uint32_t>(std::llround(ri * 1e6))) << 32) ^
      static_cast<std::uint32_t>(std::llround(rj * 1e6));
  auto it = boundary_index_.find(k64);
  if (it != boundary_index_.end()) return it->second;
  return std::nullopt;
}

GridFunction GridFunction::sample(GridPtr grid,
                                  const std::function<double(Point)>& f) {
  GridFunction g(std::move(grid));
  for (int id = 0; id < g.grid().n_nodes(); ++id)
    g[id] = f(g.grid().pos(id));
  return g;
}

double GridFunction::max_all() const {
  return *std::max_element(values_.begin(), values_.end());
}
double GridFunction::min_all() const {
  return *std::min_element(values_.begin(), values_.end());
}
double GridFunction::max_interior() const {
  return *std::max_element(values_.begin(),
                           values_.begin() + grid_->n_interior());
}
double GridFunction::min_interior() const {
  return *std::min_element(values_.begin(),
                           values_.begin() + grid_->n_interior());
}
double GridFunction::max_boundary() const {
  return *std::max_element(values_.begin() + grid_->n_interior(),
                           values_.end());
}
double GridFunction::min_boundary() const {
  return *std::min_element(values_.begin() + grid_->n_interior(),
                           values_.end());
}
double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::interpolate(Point p) const {
  const Grid& g = *grid_;
  double h = g.h();
  Point o = g.lattice_origin();

  if (auto id = g.node_at(p)) return values_[*id];

  auto corner = [&](int i, int j) -> std::optional<double> {
    Point q = o + pt(i * h, j * h);
    if (g.dim() == 1) q[1] = 0.0;
    if (auto id = g.node_at(q)) return values_[*id];
    return std::nullopt;
  };

  double ri = (p[0] - o[0]) / h;
  int i0 = static_cast<int>(std::floor(ri));
  double fx = ri - i0;

  if (g.dim() == 1) {
    auto a = corner(i0, 0), b = corner(i0 + 1, 0);
    if (a && b) return (1 - fx) * *a + fx * *b;
    if (a) return *a;
    if (b) return *b;
  } else {
    double rj = (p[1] - o[1]) / h;
    int j0 = static_cast<int>(std::floor(rj));
    double fy = rj - j0;
    auto c00 = corner(i0, j0), c10 = corner(i0 + 1, j0);
    auto c01 = corner(i0, j0 + 1), c11 = corner(i0 + 1, j0 + 1);
    if (c00 && c10 && c01 && c11) {
      return (1 - fx) * (1 - fy) * *c00 + fx * (1 - fy) * *c10 +
             (1 - fx) * fy * *c01 + fx * fy * *c11;
    }
    // Near a curved boundary some corners are missing: use the nearest
    // available corner (first-order accurate, only used within O(h) of the
    // boundary).
    double best_d = 1e300, best_v = 0.0;
    bool found = false;
    for (int di = 0; di <= 1; ++di) {
      for (int dj = 0; dj <= 1; ++dj) {
        Point q = o + pt((i0 + di) * h, (j0 + dj) * h);
        if (auto id = g.node_at(q)) {
          double d = dist(p, q);
          if (d < best_d) best_d = d, best_v = values_[*id], found = true;
        }
      }
    }
    if (found) return best_v;
  }

  // Fully outside the lattice support: nearest boundary node.
  double best_d = 1e300, best_v = 0.0;
  for (int id = g.n_interior(); id < g.n_nodes(); ++id) {
    double d = dist(p, g.pos(id));
    if (d < best_d) best_d = d, best_v = values_[id];
  }
  return best_v;
}

}  // namespace viscolab
