#include "greenperturb/pde_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace greenperturb {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using SparseLU = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

// Row of the Shortley-Weller discretization of Delta at node k. For arm
// lengths a (plus side) and b (minus side) the 1-D second derivative is
// 2 u(+)/(a(a+b)) + 2 u(-)/(b(a+b)) - 2 u0/(ab).
struct StencilRow {
  double diag = 0.0;
  double coeff[4] = {0, 0, 0, 0};  // per leg, applied to neighbor or bval
};

StencilRow stencil_row(const Grid& grid, int k) {
  StencilRow row;
  const double h = grid.spacing();
  for (int axis = 0; axis < 2; ++axis) {
    const GridLeg& plus = grid.leg(k, 2 * axis);
    const GridLeg& minus = grid.leg(k, 2 * axis + 1);
    const double a = plus.fraction * h;
    const double b = minus.fraction * h;
    row.coeff[2 * axis] = 2.0 / (a * (a + b));
    row.coeff[2 * axis + 1] = 2.0 / (b * (a + b));
    row.diag -= 2.0 / (a * b);
  }
  return row;
}

}  // namespace

struct DirichletSolver::Impl {
  SpMat laplace;
  std::unique_ptr<SparseLU> laplace_lu;  // built on first use
  std::vector<double> row_scale;         // 1-norm of each row, for residuals

  const SparseLU& factorization() {
    if (!laplace_lu) {
      laplace_lu = std::make_unique<SparseLU>();
      laplace_lu->analyzePattern(laplace);
      laplace_lu->factorize(laplace);
      if (laplace_lu->info() != Eigen::Success) {
        laplace_lu.reset();
        throw NumericalError("Laplace factorization failed");
      }
    }
    return *laplace_lu;
  }
};

DirichletSolver::DirichletSolver(const Domain2D& d, double h)
    : grid_(Grid::build(d, h)), impl_(std::make_unique<Impl>()) {
  const int n = grid_->interior_count();
  if (n == 0) throw ValidationError("grid has no interior nodes");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(std::size_t(n) * 5);
  impl_->row_scale.assign(std::size_t(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const StencilRow row = stencil_row(*grid_, k);
    triplets.emplace_back(k, k, row.diag);
    double scale = std::abs(row.diag);
    for (int dir = 0; dir < 4; ++dir) {
      const GridLeg& leg = grid_->leg(k, dir);
      scale += row.coeff[dir];
      if (leg.neighbor >= 0)
        triplets.emplace_back(k, leg.neighbor, row.coeff[dir]);
    }
    impl_->row_scale[std::size_t(k)] = scale;
  }
  impl_->laplace.resize(n, n);
  impl_->laplace.setFromTriplets(triplets.begin(), triplets.end());
}

DirichletSolver::~DirichletSolver() = default;

FieldGrid DirichletSolver::solve_nodal(
    const std::vector<double>& q_nodes, const std::vector<double>& rhs_nodes,
    const std::vector<double>& crossing_bvals) const {
  const int n = grid_->interior_count();
  if (int(rhs_nodes.size()) != n)
    throw ValidationError("rhs node count does not match grid");
  std::vector<double> bvals = crossing_bvals;
  if (bvals.empty()) bvals.assign(std::size_t(grid_->crossing_count()), 0.0);
  if (int(bvals.size()) != grid_->crossing_count())
    throw ValidationError("boundary value count does not match grid");
  for (double v : rhs_nodes)
    if (!std::isfinite(v)) throw ValidationError("rhs must be finite");

  // Move the Dirichlet data of cut arms to the right-hand side.
  Eigen::VectorXd b(n);
  for (int k = 0; k < n; ++k) {
    const StencilRow row = stencil_row(*grid_, k);
    double v = rhs_nodes[std::size_t(k)];
    for (int dir = 0; dir < 4; ++dir) {
      const GridLeg& leg = grid_->leg(k, dir);
      if (leg.neighbor < 0)
        v -= row.coeff[dir] * bvals[std::size_t(leg.crossing_index)];
    }
    b(k) = v;
  }

  Eigen::VectorXd u;
  const bool shifted = !q_nodes.empty();
  if (!shifted) {
    u = impl_->factorization().solve(b);
  } else {
    if (int(q_nodes.size()) != n)
      throw ValidationError("q node count does not match grid");
    SpMat A = impl_->laplace;
    for (int k = 0; k < n; ++k) A.coeffRef(k, k) -= q_nodes[std::size_t(k)];
    SparseLU lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "shifted system is singular or ill-conditioned (h = "
          << grid_->spacing() << ", nodes = " << n << ")";
      throw NumericalError(msg.str());
    }
    u = lu.solve(b);
    // One step of iterative refinement, then the residual gate below.
    u += lu.solve(Eigen::VectorXd(b - A * u));
    const Eigen::VectorXd r = b - A * u;
    for (int k = 0; k < n; ++k) {
      const double scale =
          impl_->row_scale[std::size_t(k)] + std::abs(q_nodes[std::size_t(k)]);
      if (std::abs(r(k)) > 1e-10 * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "solver residual " << std::abs(r(k)) << " above tolerance at h = "
            << grid_->spacing();
        throw NumericalError(msg.str());
      }
    }
    return FieldGrid(grid_, std::vector<double>(u.data(), u.data() + n),
                     std::move(bvals));
  }

  const Eigen::VectorXd r0 = b - impl_->laplace * u;
  u += impl_->factorization().solve(r0);
  const Eigen::VectorXd r = b - impl_->laplace * u;
  for (int k = 0; k < n; ++k) {
    if (std::abs(r(k)) > 1e-10 * std::max(1.0, impl_->row_scale[std::size_t(k)])) {
      std::ostringstream msg;
      msg << "solver residual " << std::abs(r(k)) << " above tolerance at h = "
          << grid_->spacing();
      throw NumericalError(msg.str());
    }
  }
  return FieldGrid(grid_, std::vector<double>(u.data(), u.data() + n),
                   std::move(bvals));
}

FieldGrid DirichletSolver::solve(const std::function<double(Complex)>& rhs,
                                 const std::function<double(Complex)>& bvals) const {
  std::vector<double> rhs_nodes(std::size_t(grid_->interior_count()));
  for (int k = 0; k < grid_->interior_count(); ++k)
    rhs_nodes[std::size_t(k)] = rhs(grid_->node_position(k));
  std::vector<double> cvals(std::size_t(grid_->crossing_count()));
  for (int c = 0; c < grid_->crossing_count(); ++c)
    cvals[std::size_t(c)] = bvals(grid_->crossing_position(c));
  return solve_nodal({}, rhs_nodes, cvals);
}

NumericGreen DirichletSolver::green(Complex w) const {
  if (grid_->domain().boundary_margin(w) < 4.0 * grid_->spacing())
    throw ValidationError("pole too close to the boundary (needs margin 4h)");
  std::vector<double> rhs(std::size_t(grid_->interior_count()), 0.0);
  std::vector<double> cvals(std::size_t(grid_->crossing_count()));
  for (int c = 0; c < grid_->crossing_count(); ++c)
    cvals[std::size_t(c)] = -log_kernel(grid_->crossing_position(c), w);
  return NumericGreen(w, solve_nodal({}, rhs, cvals));
}

// Right-hand side q * g_w with the node nearest the pole carrying the cell
// average of Phi_w; the pointwise value is not integrable there.
std::vector<double> DirichletSolver::green_rhs(
    const NumericGreen& base, const std::vector<double>& q_nodes) const {
  const int n = grid_->interior_count();
  const double h = grid_->spacing();
  const Complex w = base.pole();
  std::vector<double> rhs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Complex p = grid_->node_position(k);
    double phi;
    if (std::abs(p.real() - w.real()) <= 0.5 * h &&
        std::abs(p.imag() - w.imag()) <= 0.5 * h) {
      phi = log_kernel_cell_average(p, 0.5 * h, 0.5 * h, 0.0, w);
    } else {
      phi = log_kernel(p, w);
    }
    rhs[std::size_t(k)] =
        q_nodes[std::size_t(k)] * (phi + base.correction()[k]);
  }
  return rhs;
}

NumericGreen DirichletSolver::green_schrodinger(const ScalarField& q,
                                                Complex w,
                                                double t_norm) const {
  const int n = grid_->interior_count();
  std::vector<double> q_nodes(static_cast<std::size_t>(n));
  double q_max = 0.0;
  for (int k = 0; k < n; ++k) {
    q_nodes[std::size_t(k)] = q(grid_->node_position(k));
    q_max = std::max(q_max, std::abs(q_nodes[std::size_t(k)]));
  }
  const double norm = t_norm > 0.0 ? t_norm : conservative_T_norm_bound();
  if (q_max * norm >= 0.9) {
    std::ostringstream msg;
    msg << "near-resonant potential rejected: ||q||*||T|| = " << q_max * norm;
    throw NumericalError(msg.str());
  }

  NumericGreen base = green(w);
  if (q_max == 0.0) return base;

  FieldGrid v = solve_nodal(q_nodes, green_rhs(base, q_nodes), {});
  FieldGrid correction = base.correction();
  correction += v;
  return NumericGreen(w, std::move(correction));
}

NumericGreen DirichletSolver::green_helmholtz(double a, Complex w,
                                              double t_norm) const {
  return green_schrodinger(ScalarField::constant(a), w, t_norm);
}

BeltramiGreen DirichletSolver::green_beltrami(const ScalarField& lambda,
                                              Complex w,
                                              double t_norm) const {
  for (int k = 0; k < grid_->interior_count(); ++k) {
    if (!(lambda(grid_->node_position(k)) > 0.0))
      throw ValidationError("lambda must be positive on the domain");
  }
  const ScalarField u = beltrami_potential(lambda);
  return BeltramiGreen(green_schrodinger(u, w, t_norm), lambda);
}

double DirichletSolver::conservative_T_norm_bound() const {
  const double r = grid_->domain().max_radius();
  return r * r / (kJ01 * kJ01);
}

ScalarField beltrami_potential(const ScalarField& lambda) {
  ScalarField u;
  if (lambda.gradient && lambda.laplacian) {
    auto lv = lambda.value;
    auto lg = lambda.gradient;
    auto ll = lambda.laplacian;
    u.value = [lv, lg, ll](Complex z) {
      const double l = lv(z);
      const Complex g = lg(z);
      return ll(z) / (2.0 * l) - std::norm(g) / (4.0 * l * l);
    };
  } else {
    // u = Delta(sqrt(lambda)) / sqrt(lambda), fourth-order differences.
    auto lv = lambda.value;
    u.value = [lv](Complex z) {
      const double step = 1e-2;
      auto s = [&](Complex p) { return std::sqrt(lv(p)); };
      double lap = 0.0;
      for (Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        lap += (-s(z + 2.0 * step * dir) + 16.0 * s(z + step * dir) -
                30.0 * s(z) + 16.0 * s(z - step * dir) -
                s(z - 2.0 * step * dir)) /
               (12.0 * step * step);
      }
      return lap / s(z);
    };
  }
  u.name = "beltrami_potential(" + lambda.name + ")";
  return u;
}

NumericGreen::NumericGreen(Complex pole, FieldGrid correction)
    : pole_(pole), correction_(std::move(correction)) {}

double NumericGreen::boundary_residual() const {
  const Grid& grid = correction_.grid();
  double worst = 0.0;
  for (int c = 0; c < grid.crossing_count(); ++c) {
    const double g = log_kernel(grid.crossing_position(c), pole_) +
                     correction_.crossing_values()[std::size_t(c)];
    worst = std::max(worst, std::abs(g));
  }
  return worst;
}

BeltramiGreen::BeltramiGreen(NumericGreen schrodinger, ScalarField lambda)
    : schrod_(std::move(schrodinger)), lambda_(std::move(lambda)) {
  sqrt_lambda_pole_ = std::sqrt(lambda_(schrod_.pole()));
}

double BeltramiGreen::eval(Complex z) const {
  return schrod_.eval(z) / (std::sqrt(lambda_(z)) * sqrt_lambda_pole_);
}

double BeltramiGreen::eval_relaxed(Complex z) const {
  return schrod_.eval_relaxed(z) / (std::sqrt(lambda_(z)) * sqrt_lambda_pole_);
}

double BeltramiGreen::normal_derivative(const BoundaryNode& node) const {
  // S vanishes on the boundary, so the product rule contributes only the
  // dS/dn term there.
  return normal_derivative_numeric(schrod_, node) /
         (std::sqrt(lambda_(node.position)) * sqrt_lambda_pole_);
}

NumericGreen green_numeric(const Domain2D& d, Complex w, double h) {
  return DirichletSolver(d, h).green(w);
}

double normal_derivative_numeric(const NumericGreen& ng,
                                 const BoundaryNode& node) {
  const double h = ng.correction().grid().spacing();
  const Complex zeta = node.position;
  const Complex n = node.normal;
  const Complex grad_phi = log_kernel_gradient(zeta, ng.pole());
  const double d_phi = grad_phi.real() * n.real() + grad_phi.imag() * n.imag();
  // One-sided second-order difference of the harmonic correction along -n;
  // its boundary value -Phi_w(zeta) is known exactly.
  const double f0 = -log_kernel(zeta, ng.pole());
  const double f1 = ng.correction().eval(zeta - 2.0 * h * n);
  const double f2 = ng.correction().eval(zeta - 4.0 * h * n);
  return d_phi + (3.0 * f0 - 4.0 * f1 + f2) / (4.0 * h);
}

}  // namespace greenperturb
