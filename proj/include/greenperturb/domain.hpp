#pragma once

#include <vector>

#include "greenperturb/common.hpp"

namespace greenperturb {

/// Real trigonometric polynomial a0 + sum_k (a_k cos k*t + b_k sin k*t).
class TrigPoly {
 public:
  TrigPoly() : cos_{0.0} {}
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);
  static TrigPoly constant(double c);

  double operator()(double theta) const;
  double derivative(double theta) const;
  int degree() const;

  // cos_coeffs()[k] multiplies cos(k t); sin_coeffs()[k] multiplies
  // sin((k+1) t).
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  double min_on_dense_sample(int samples = 4096) const;
  bool operator==(const TrigPoly&) const = default;

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Bounded star-shaped planar domain with trigonometric-polynomial boundary
/// radius rho(theta) > 0. A disk is the special case rho == R.
class Domain2D {
 public:
  enum class Kind { kDisk, kStar };

  static Domain2D disk(double radius);
  static Domain2D star(TrigPoly rho);

  Kind kind() const { return kind_; }
  bool is_disk() const { return kind_ == Kind::kDisk; }
  double radius() const;  // disk only

  const TrigPoly& rho() const { return rho_; }
  double boundary_radius(double theta) const { return rho_(theta); }
  double boundary_radius_derivative(double theta) const {
    return rho_.derivative(theta);
  }

  // Points within 1e-12 of the boundary are classified as exterior, so a
  // solver stencil never lands ambiguously on the boundary itself.
  bool contains(Complex z) const;
  // rho(arg z) - |z|; positive inside, zero on the boundary.
  double boundary_margin(Complex z) const;

  double max_radius() const { return max_radius_; }
  double min_radius() const { return min_radius_; }
  double area() const;  // exact, by Parseval on rho^2

  /// The same domain represented with star kind (identity for stars).
  Domain2D as_star() const;

 private:
  Domain2D(Kind kind, double radius, TrigPoly rho);

  Kind kind_;
  double radius_ = 0.0;
  TrigPoly rho_;
  double max_radius_ = 0.0;
  double min_radius_ = 0.0;
};

struct BoundaryNode {
  Complex position;
  Complex normal;  // outward unit normal
  double ds;       // arclength quadrature weight
  double theta;    // boundary parameter
};

struct BoundaryMesh {
  std::vector<BoundaryNode> nodes;
  double total_length() const;
};

/// Uniform-in-theta boundary discretization with analytic normals and
/// arclength weights. Requires node_count >= 16.
BoundaryMesh boundary_mesh(const Domain2D& d, int node_count);

/// Positive boundary perturbation profile p(theta), a trigonometric
/// polynomial; positivity is checked on a dense sample at construction.
class BoundaryPerturbation {
 public:
  explicit BoundaryPerturbation(TrigPoly p);
  static BoundaryPerturbation constant(double c);

  double operator()(double theta) const { return p_(theta); }
  const TrigPoly& poly() const { return p_; }
  int degree() const { return p_.degree(); }

 private:
  TrigPoly p_;
};

/// Moves every boundary point a distance eps*p(zeta) along the outward
/// normal and refits a star boundary of degree deg(d) + deg(p) + 4 to the
/// moved points. Rejects eps < 0 and moved boundaries that are no longer a
/// graph over theta. perturb(d, p, 0) returns d unchanged.
Domain2D perturb(const Domain2D& d, const BoundaryPerturbation& p, double eps);

}  // namespace greenperturb
