#include "greenperturb/domain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace greenperturb {

namespace {
constexpr double kBoundaryBand = 1e-12;
}

TrigPoly::TrigPoly(std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) cos_.push_back(0.0);
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly({c}, {}); }

double TrigPoly::operator()(double theta) const {
  double v = cos_[0];
  for (std::size_t k = 1; k < cos_.size(); ++k)
    v += cos_[k] * std::cos(double(k) * theta);
  for (std::size_t k = 0; k < sin_.size(); ++k)
    v += sin_[k] * std::sin(double(k + 1) * theta);
  return v;
}

double TrigPoly::derivative(double theta) const {
  double v = 0.0;
  for (std::size_t k = 1; k < cos_.size(); ++k)
    v -= double(k) * cos_[k] * std::sin(double(k) * theta);
  for (std::size_t k = 0; k < sin_.size(); ++k)
    v += double(k + 1) * sin_[k] * std::cos(double(k + 1) * theta);
  return v;
}

int TrigPoly::degree() const {
  return int(std::max(cos_.size() - 1, sin_.size()));
}

double TrigPoly::min_on_dense_sample(int samples) const {
  double m = (*this)(0.0);
  for (int i = 1; i < samples; ++i)
    m = std::min(m, (*this)(kTwoPi * double(i) / double(samples)));
  return m;
}

Domain2D::Domain2D(Kind kind, double radius, TrigPoly rho)
    : kind_(kind), radius_(radius), rho_(std::move(rho)) {
  max_radius_ = min_radius_ = rho_(0.0);
  const int samples = 4096;
  for (int i = 1; i < samples; ++i) {
    const double r = rho_(kTwoPi * double(i) / double(samples));
    max_radius_ = std::max(max_radius_, r);
    min_radius_ = std::min(min_radius_, r);
  }
}

Domain2D Domain2D::disk(double radius) {
  if (!(radius > 0.0))
    throw ValidationError("disk radius must be positive");
  return Domain2D(Kind::kDisk, radius, TrigPoly::constant(radius));
}

Domain2D Domain2D::star(TrigPoly rho) {
  if (!(rho.min_on_dense_sample() > 0.0))
    throw ValidationError("star boundary radius must be positive for all theta");
  return Domain2D(Kind::kStar, 0.0, std::move(rho));
}

double Domain2D::radius() const {
  if (kind_ != Kind::kDisk)
    throw ValidationError("radius() is only defined for disk domains");
  return radius_;
}

bool Domain2D::contains(Complex z) const {
  return boundary_margin(z) > kBoundaryBand;
}

double Domain2D::boundary_margin(Complex z) const {
  if (kind_ == Kind::kDisk) return radius_ - std::abs(z);
  return rho_(std::arg(z)) - std::abs(z);
}

double Domain2D::area() const {
  const auto& a = rho_.cos_coeffs();
  const auto& b = rho_.sin_coeffs();
  double v = kPi * a[0] * a[0];
  for (std::size_t k = 1; k < a.size(); ++k) v += 0.5 * kPi * a[k] * a[k];
  for (double bk : b) v += 0.5 * kPi * bk * bk;
  return v;
}

Domain2D Domain2D::as_star() const {
  return Domain2D(Kind::kStar, 0.0, rho_);
}

double BoundaryMesh::total_length() const {
  double s = 0.0;
  for (const auto& n : nodes) s += n.ds;
  return s;
}

BoundaryMesh boundary_mesh(const Domain2D& d, int node_count) {
  if (node_count < 4)
    throw ValidationError("boundary mesh needs at least 4 nodes");
  BoundaryMesh mesh;
  mesh.nodes.reserve(std::size_t(node_count));
  const double dtheta = kTwoPi / double(node_count);
  for (int j = 0; j < node_count; ++j) {
    const double theta = dtheta * double(j);
    const double r = d.boundary_radius(theta);
    const double rp = d.boundary_radius_derivative(theta);
    const double speed = std::hypot(r, rp);
    const Complex dir = std::polar(1.0, theta);
    BoundaryNode node;
    node.position = r * dir;
    node.normal = Complex(r, -rp) * dir / speed;
    node.ds = speed * dtheta;
    node.theta = theta;
    mesh.nodes.push_back(node);
  }
  return mesh;
}

BoundaryPerturbation::BoundaryPerturbation(TrigPoly p) : p_(std::move(p)) {
  if (!(p_.min_on_dense_sample() > 0.0))
    throw ValidationError("boundary perturbation p must be positive");
}

BoundaryPerturbation BoundaryPerturbation::constant(double c) {
  return BoundaryPerturbation(TrigPoly::constant(c));
}

Domain2D perturb(const Domain2D& d, const BoundaryPerturbation& p,
                 double eps) {
  if (eps < 0.0) throw ValidationError("perturbation eps must be >= 0");
  if (eps == 0.0) return d;

  const int fit_degree = d.rho().degree() + p.degree() + 4;
  const int samples = std::max(512, 16 * (fit_degree + 1));

  // Moved boundary points and their polar angles.
  std::vector<double> phi(samples), rad(samples);
  const double dtheta = kTwoPi / double(samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = dtheta * double(j);
    const double r = d.boundary_radius(theta);
    const double rp = d.boundary_radius_derivative(theta);
    const double speed = std::hypot(r, rp);
    const Complex dir = std::polar(1.0, theta);
    const Complex pos = r * dir;
    const Complex normal = Complex(r, -rp) * dir / speed;
    const Complex moved = pos + eps * p(theta) * normal;
    phi[j] = std::arg(moved);
    rad[j] = std::abs(moved);
  }

  // The moved boundary must still be a graph over theta: the angles have to
  // stay strictly increasing with total winding one.
  double winding = 0.0;
  for (int j = 0; j < samples; ++j) {
    double dphi = phi[(j + 1) % samples] - phi[j];
    while (dphi <= -kPi) dphi += kTwoPi;
    while (dphi > kPi) dphi -= kTwoPi;
    if (dphi <= 0.0)
      throw ValidationError(
          "perturbed boundary is self-intersecting or not star-shaped");
    winding += dphi;
  }
  if (std::abs(winding - kTwoPi) > 1e-9)
    throw ValidationError("perturbed boundary does not wind once around 0");

  // Least-squares trigonometric fit of the moved radius over the moved
  // angles; truncation at fit_degree drops the ringing beyond O(eps^2).
  const int cols = 2 * fit_degree + 1;
  Eigen::MatrixXd A(samples, cols);
  Eigen::VectorXd b(samples);
  for (int j = 0; j < samples; ++j) {
    A(j, 0) = 1.0;
    for (int k = 1; k <= fit_degree; ++k) {
      A(j, 2 * k - 1) = std::cos(double(k) * phi[j]);
      A(j, 2 * k) = std::sin(double(k) * phi[j]);
    }
    b(j) = rad[j];
  }
  Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);

  std::vector<double> cos_coeffs(static_cast<std::size_t>(fit_degree) + 1);
  std::vector<double> sin_coeffs(static_cast<std::size_t>(fit_degree));
  cos_coeffs[0] = coef(0);
  for (int k = 1; k <= fit_degree; ++k) {
    cos_coeffs[std::size_t(k)] = coef(2 * k - 1);
    sin_coeffs[std::size_t(k - 1)] = coef(2 * k);
  }

  try {
    return Domain2D::star(TrigPoly(std::move(cos_coeffs), std::move(sin_coeffs)));
  } catch (const ValidationError&) {
    throw ValidationError("perturbed boundary radius is not positive");
  }
}

}  // namespace greenperturb
