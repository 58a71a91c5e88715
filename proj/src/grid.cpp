#include "greenperturb/grid.hpp"

#include <algorithm>
#include <cmath>

namespace greenperturb {

namespace {
constexpr double kMinLegFraction = 1e-6;  // conditioning floor for cut arms
}

std::shared_ptr<const Grid> Grid::build(const Domain2D& domain, double h) {
  if (!(h > 0.0)) throw ValidationError("grid spacing must be positive");
  auto grid = std::shared_ptr<Grid>(new Grid());
  grid->domain_ = domain;
  grid->h_ = h;

  const int half = int(std::ceil((domain.max_radius() + 2.0 * h) / h));
  grid->nx_ = grid->ny_ = 2 * half + 1;
  grid->x0_ = grid->y0_ = -double(half) * h;

  grid->index_.assign(std::size_t(grid->nx_) * std::size_t(grid->ny_), -1);
  auto flat = [&](int i, int j) {
    return std::size_t(j) * std::size_t(grid->nx_) + std::size_t(i);
  };
  auto pos = [&](int i, int j) {
    return Complex(grid->x0_ + i * h, grid->y0_ + j * h);
  };

  for (int j = 0; j < grid->ny_; ++j) {
    for (int i = 0; i < grid->nx_; ++i) {
      if (domain.contains(pos(i, j))) {
        grid->index_[flat(i, j)] = int(grid->positions_.size());
        grid->positions_.push_back(pos(i, j));
        grid->ij_.push_back({i, j});
      }
    }
  }

  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  grid->legs_.resize(4 * grid->positions_.size());
  for (int k = 0; k < grid->interior_count(); ++k) {
    const auto [i, j] = grid->ij_[std::size_t(k)];
    const Complex p = grid->positions_[std::size_t(k)];
    for (int dir = 0; dir < 4; ++dir) {
      GridLeg& leg = grid->legs_[std::size_t(4 * k + dir)];
      const int ni = i + dirs[dir][0];
      const int nj = j + dirs[dir][1];
      const int nk = (ni >= 0 && ni < grid->nx_ && nj >= 0 && nj < grid->ny_)
                         ? grid->index_[flat(ni, nj)]
                         : -1;
      if (nk >= 0) {
        leg.neighbor = nk;
        continue;
      }
      // Cut arm: bisect the boundary crossing along the stencil direction.
      const Complex step(h * dirs[dir][0], h * dirs[dir][1]);
      double lo = 0.0, hi = 1.0;
      if (domain.boundary_margin(p + step) > 0.0) {
        // Neighbor sits in the exterior classification band; the crossing
        // is the neighbor itself.
        hi = 1.0;
      } else {
        for (int iter = 0; iter < 60; ++iter) {
          const double mid = 0.5 * (lo + hi);
          (domain.boundary_margin(p + mid * step) > 0.0 ? lo : hi) = mid;
        }
      }
      leg.neighbor = -1;
      leg.fraction = std::max(hi, kMinLegFraction);
      leg.crossing = p + leg.fraction * step;
      leg.crossing_index = int(grid->crossings_.size());
      grid->crossings_.push_back(leg.crossing);
    }
  }
  return grid;
}

int Grid::node_index(int i, int j) const {
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return -1;
  return index_[std::size_t(j) * std::size_t(nx_) + std::size_t(i)];
}

bool Grid::locate_cell(Complex z, int* i, int* j, double* fx,
                       double* fy) const {
  const double gx = (z.real() - x0_) / h_;
  const double gy = (z.imag() - y0_) / h_;
  const int ci = int(std::floor(gx));
  const int cj = int(std::floor(gy));
  if (ci < 0 || ci + 1 >= nx_ || cj < 0 || cj + 1 >= ny_) return false;
  *i = ci;
  *j = cj;
  *fx = gx - ci;
  *fy = gy - cj;
  return true;
}

FieldGrid::FieldGrid(std::shared_ptr<const Grid> grid,
                     std::vector<double> node_values,
                     std::vector<double> crossing_values)
    : grid_(std::move(grid)),
      values_(std::move(node_values)),
      crossing_values_(std::move(crossing_values)) {
  if (int(values_.size()) != grid_->interior_count())
    throw ValidationError("node value count does not match grid");
  if (crossing_values_.empty())
    crossing_values_.assign(std::size_t(grid_->crossing_count()), 0.0);
  if (int(crossing_values_.size()) != grid_->crossing_count())
    throw ValidationError("crossing value count does not match grid");
  compute_nodal_gradients();
}

FieldGrid FieldGrid::from_function(std::shared_ptr<const Grid> grid,
                                   const std::function<double(Complex)>& f) {
  std::vector<double> vals(std::size_t(grid->interior_count()));
  for (int k = 0; k < grid->interior_count(); ++k)
    vals[std::size_t(k)] = f(grid->node_position(k));
  std::vector<double> cvals(std::size_t(grid->crossing_count()));
  for (int c = 0; c < grid->crossing_count(); ++c)
    cvals[std::size_t(c)] = f(grid->crossing_position(c));
  return FieldGrid(std::move(grid), std::move(vals), std::move(cvals));
}

void FieldGrid::compute_nodal_gradients() {
  const double h = grid_->spacing();
  nodal_gradient_.resize(values_.size());
  for (int k = 0; k < grid_->interior_count(); ++k) {
    double comp[2];
    for (int axis = 0; axis < 2; ++axis) {
      const GridLeg& plus = grid_->leg(k, 2 * axis);
      const GridLeg& minus = grid_->leg(k, 2 * axis + 1);
      const double f0 = values_[std::size_t(k)];
      if (plus.neighbor >= 0 && minus.neighbor >= 0) {
        comp[axis] = (values_[std::size_t(plus.neighbor)] -
                      values_[std::size_t(minus.neighbor)]) /
                     (2.0 * h);
      } else if (plus.neighbor < 0 && minus.neighbor >= 0) {
        const double a = plus.fraction;
        const double fa = crossing_values_[std::size_t(plus.crossing_index)];
        const double fm = values_[std::size_t(minus.neighbor)];
        comp[axis] =
            (fa - a * a * fm - (1.0 - a * a) * f0) / (h * a * (1.0 + a));
      } else if (plus.neighbor >= 0 && minus.neighbor < 0) {
        const double b = minus.fraction;
        const double fb = crossing_values_[std::size_t(minus.crossing_index)];
        const double fp = values_[std::size_t(plus.neighbor)];
        comp[axis] =
            (b * b * fp - fb - (b * b - 1.0) * f0) / (h * b * (1.0 + b));
      } else {
        const double a = plus.fraction, b = minus.fraction;
        const double fa = crossing_values_[std::size_t(plus.crossing_index)];
        const double fb = crossing_values_[std::size_t(minus.crossing_index)];
        comp[axis] = (fa - fb) / ((a + b) * h);
      }
    }
    nodal_gradient_[std::size_t(k)] = Complex(comp[0], comp[1]);
  }
}

namespace {

struct Corners {
  int n00, n10, n01, n11;
  double fx, fy;
  bool complete;
};

Corners find_corners(const Grid& grid, Complex z) {
  Corners c{-1, -1, -1, -1, 0.0, 0.0, false};
  int i, j;
  if (!grid.locate_cell(z, &i, &j, &c.fx, &c.fy)) return c;
  c.n00 = grid.node_index(i, j);
  c.n10 = grid.node_index(i + 1, j);
  c.n01 = grid.node_index(i, j + 1);
  c.n11 = grid.node_index(i + 1, j + 1);
  c.complete = c.n00 >= 0 && c.n10 >= 0 && c.n01 >= 0 && c.n11 >= 0;
  return c;
}

double bilinear(const Corners& c, const std::vector<double>& v) {
  const double w00 = (1 - c.fx) * (1 - c.fy);
  const double w10 = c.fx * (1 - c.fy);
  const double w01 = (1 - c.fx) * c.fy;
  const double w11 = c.fx * c.fy;
  return w00 * v[std::size_t(c.n00)] + w10 * v[std::size_t(c.n10)] +
         w01 * v[std::size_t(c.n01)] + w11 * v[std::size_t(c.n11)];
}

}  // namespace

double FieldGrid::eval(Complex z) const {
  const Corners c = find_corners(*grid_, z);
  if (c.complete) return bilinear(c, values_);
  // A point sitting (numerically) on an interior node is still fine even
  // when the surrounding cell touches the boundary.
  if (c.n00 >= 0 && c.fx < 1e-12 && c.fy < 1e-12)
    return values_[std::size_t(c.n00)];
  throw ValidationError("field evaluation too close to the boundary");
}

double FieldGrid::eval_relaxed(Complex z) const {
  const Corners c = find_corners(*grid_, z);
  if (c.complete) return bilinear(c, values_);
  const int candidates[4] = {c.n00, c.n10, c.n01, c.n11};
  const double wx[4] = {1 - c.fx, c.fx, 1 - c.fx, c.fx};
  const double wy[4] = {1 - c.fy, 1 - c.fy, c.fy, c.fy};
  double best_w = -1.0, best_v = 0.0;
  for (int t = 0; t < 4; ++t) {
    if (candidates[t] < 0) continue;
    const double w = wx[t] * wy[t];
    if (w > best_w) {
      best_w = w;
      best_v = values_[std::size_t(candidates[t])];
    }
  }
  return best_w >= 0.0 ? best_v : 0.0;
}

Complex FieldGrid::gradient(Complex z) const {
  const Corners c = find_corners(*grid_, z);
  if (!c.complete) {
    if (c.n00 >= 0 && c.fx < 1e-12 && c.fy < 1e-12)
      return nodal_gradient_[std::size_t(c.n00)];
    throw ValidationError("gradient evaluation too close to the boundary");
  }
  const double w00 = (1 - c.fx) * (1 - c.fy);
  const double w10 = c.fx * (1 - c.fy);
  const double w01 = (1 - c.fx) * c.fy;
  const double w11 = c.fx * c.fy;
  return w00 * nodal_gradient_[std::size_t(c.n00)] +
         w10 * nodal_gradient_[std::size_t(c.n10)] +
         w01 * nodal_gradient_[std::size_t(c.n01)] +
         w11 * nodal_gradient_[std::size_t(c.n11)];
}

FieldGrid& FieldGrid::operator+=(const FieldGrid& other) {
  if (grid_ != other.grid_)
    throw ValidationError("cannot add fields on different grids");
  for (std::size_t k = 0; k < values_.size(); ++k)
    values_[k] += other.values_[k];
  for (std::size_t c = 0; c < crossing_values_.size(); ++c)
    crossing_values_[c] += other.crossing_values_[c];
  compute_nodal_gradients();
  return *this;
}

}  // namespace greenperturb
