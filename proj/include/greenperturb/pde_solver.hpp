#pragma once

#include <memory>
#include <optional>

#include "greenperturb/disk_analytic.hpp"
#include "greenperturb/grid.hpp"
#include "greenperturb/logkernel.hpp"

namespace greenperturb {

/// Numerical Green function represented by singularity splitting:
/// g_w(z) = (2*pi)^{-1} ln|z - w| + correction(z), where the correction is
/// the grid solution with Dirichlet data -Phi_w.
class NumericGreen {
 public:
  NumericGreen(Complex pole, FieldGrid correction);

  Complex pole() const { return pole_; }
  double eval(Complex z) const {
    return log_kernel(z, pole_) + correction_.eval(z);
  }
  double eval_relaxed(Complex z) const {
    return log_kernel(z, pole_) + correction_.eval_relaxed(z);
  }
  Complex gradient(Complex z) const {
    return log_kernel_gradient(z, pole_) + correction_.gradient(z);
  }
  /// g - Phi_pole and its gradient (finite on the diagonal).
  double smooth_value(Complex z) const { return correction_.eval(z); }
  double smooth_value_relaxed(Complex z) const {
    return correction_.eval_relaxed(z);
  }
  Complex smooth_gradient(Complex z) const { return correction_.gradient(z); }

  const FieldGrid& correction() const { return correction_; }
  /// max |Phi_w + imposed value| over the boundary crossings; the discrete
  /// Green function extrapolated to the boundary.
  double boundary_residual() const;

 private:
  Complex pole_;
  FieldGrid correction_;
};

/// Green function of div(lambda grad) obtained through the substitution
/// g* = S / sqrt(lambda(z) lambda(w)), with S the Green function of the
/// Schroedinger operator Delta - u, u = Delta(lambda)/(2 lambda)
/// - |grad lambda|^2/(4 lambda^2).
class BeltramiGreen {
 public:
  BeltramiGreen(NumericGreen schrodinger, ScalarField lambda);

  Complex pole() const { return schrod_.pole(); }
  double eval(Complex z) const;
  double eval_relaxed(Complex z) const;
  double normal_derivative(const BoundaryNode& node) const;
  const NumericGreen& schrodinger_green() const { return schrod_; }
  const ScalarField& lambda() const { return lambda_; }

 private:
  NumericGreen schrod_;
  ScalarField lambda_;
  double sqrt_lambda_pole_;
};

/// Shortley-Weller Dirichlet solver on a star-shaped domain. The plain
/// Laplace factorization is computed once and reused across poles; shifted
/// operators (Delta - q) are factored per call.
class DirichletSolver {
 public:
  DirichletSolver(const Domain2D& d, double h);
  ~DirichletSolver();
  DirichletSolver(const DirichletSolver&) = delete;
  DirichletSolver& operator=(const DirichletSolver&) = delete;

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  double spacing() const { return grid_->spacing(); }
  const Domain2D& domain() const { return grid_->domain(); }

  /// Delta u = rhs, u = bvals on the boundary.
  FieldGrid solve(const std::function<double(Complex)>& rhs,
                  const std::function<double(Complex)>& bvals) const;
  /// Nodal right-hand side and crossing Dirichlet values; q empty means the
  /// plain Laplacian, otherwise (Delta - q) u = rhs.
  FieldGrid solve_nodal(const std::vector<double>& q_nodes,
                        const std::vector<double>& rhs_nodes,
                        const std::vector<double>& crossing_bvals) const;

  /// Requires boundary margin of the pole >= 4h.
  NumericGreen green(Complex w) const;
  NumericGreen green_helmholtz(double a, Complex w, double t_norm = 0.0) const;
  NumericGreen green_schrodinger(const ScalarField& q, Complex w,
                                 double t_norm = 0.0) const;
  BeltramiGreen green_beltrami(const ScalarField& lambda, Complex w,
                               double t_norm = 0.0) const;

  /// Domain-monotonicity bound ||T|| <= max_radius^2 / j01^2,
  /// used by the resonance guards when no sharper estimate is supplied.
  double conservative_T_norm_bound() const;

 private:
  struct Impl;
  std::vector<double> green_rhs(const NumericGreen& base,
                                const std::vector<double>& q_nodes) const;

  std::shared_ptr<const Grid> grid_;
  std::unique_ptr<Impl> impl_;
};

/// Schroedinger potential of the change of variables for div(lambda grad):
/// exact rational expression when lambda carries closed-form derivatives,
/// fourth-order finite differences of sqrt(lambda) otherwise.
ScalarField beltrami_potential(const ScalarField& lambda);

NumericGreen green_numeric(const Domain2D& d, Complex w, double h = 1.0 / 128);
double normal_derivative_numeric(const NumericGreen& ng,
                                 const BoundaryNode& node);
inline Complex gradient_numeric(const FieldGrid& f, Complex z) {
  return f.gradient(z);
}
inline Complex gradient_numeric(const NumericGreen& ng, Complex z) {
  return ng.gradient(z);
}

}  // namespace greenperturb
