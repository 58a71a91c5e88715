#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "greenperturb/common.hpp"
#include "greenperturb/domain.hpp"

namespace greenperturb {

/// One arm of the 5-point stencil. When the arm crosses the boundary before
/// reaching the neighboring node, `neighbor` is -1 and `crossing` /
/// `crossing_index` identify the Dirichlet point; `fraction` is the arm
/// length divided by h, in (0, 1].
struct GridLeg {
  int neighbor = -1;
  double fraction = 1.0;
  Complex crossing{};
  int crossing_index = -1;
};

/// Uniform Cartesian lattice masked to the domain interior, with
/// Shortley-Weller cut arms where the stencil meets the boundary.
class Grid {
 public:
  static std::shared_ptr<const Grid> build(const Domain2D& domain, double h);

  double spacing() const { return h_; }
  int interior_count() const { return int(positions_.size()); }
  int crossing_count() const { return int(crossings_.size()); }
  Complex node_position(int k) const { return positions_[std::size_t(k)]; }
  /// dir: 0 = +x, 1 = -x, 2 = +y, 3 = -y.
  const GridLeg& leg(int k, int dir) const {
    return legs_[std::size_t(4 * k + dir)];
  }
  Complex crossing_position(int c) const { return crossings_[std::size_t(c)]; }
  const Domain2D& domain() const { return domain_; }

  int node_index(int i, int j) const;
  std::array<int, 2> node_ij(int k) const { return ij_[std::size_t(k)]; }

  /// Lattice cell containing z: lower-left node (i, j) plus in-cell
  /// fractions. Returns false if z is outside the lattice bounding box.
  bool locate_cell(Complex z, int* i, int* j, double* fx, double* fy) const;

 private:
  Grid() = default;

  Domain2D domain_ = Domain2D::disk(1.0);
  double h_ = 0.0;
  int nx_ = 0, ny_ = 0;
  double x0_ = 0.0, y0_ = 0.0;
  std::vector<int> index_;  // nx*ny lattice -> interior index or -1
  std::vector<Complex> positions_;
  std::vector<std::array<int, 2>> ij_;
  std::vector<GridLeg> legs_;  // 4 per interior node
  std::vector<Complex> crossings_;
};

/// Scalar field sampled at the interior nodes of a Grid, together with its
/// Dirichlet values at the boundary crossings. Off-node evaluation is
/// bilinear among interior nodes; gradients interpolate second-order nodal
/// differences (one-sided with the crossing value next to the boundary).
class FieldGrid {
 public:
  FieldGrid(std::shared_ptr<const Grid> grid, std::vector<double> node_values,
            std::vector<double> crossing_values);
  static FieldGrid from_function(std::shared_ptr<const Grid> grid,
                                 const std::function<double(Complex)>& f);

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  double operator[](int k) const { return values_[std::size_t(k)]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& crossing_values() const {
    return crossing_values_;
  }

  double eval(Complex z) const;
  /// Same as eval but falls back to the nearest interior corner when the
  /// bilinear cell touches the exterior (used by quadrature tails where the
  /// integrand vanishes toward the boundary).
  double eval_relaxed(Complex z) const;
  Complex gradient(Complex z) const;

  FieldGrid& operator+=(const FieldGrid& other);

 private:
  void compute_nodal_gradients();

  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
  std::vector<double> crossing_values_;
  std::vector<Complex> nodal_gradient_;
};

}  // namespace greenperturb
