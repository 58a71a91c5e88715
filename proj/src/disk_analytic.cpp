#include "greenperturb/disk_analytic.hpp"

#include <cmath>
#include <limits>

namespace greenperturb {

namespace {

void require_interior(double R, Complex z, const char* what) {
  if (!(std::abs(z) < R)) {
    throw ValidationError(std::string(what) +
                          " must lie strictly inside the disk");
  }
}

}  // namespace

double green_disk(double R, Complex z, Complex w) {
  require_interior(R, z, "z");
  require_interior(R, w, "w");
  if (z == w) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(R * (z - w) / (R * R - z * std::conj(w)))) / kTwoPi;
}

double normal_derivative_disk(double R, Complex zeta, Complex w) {
  if (std::abs(std::abs(zeta) - R) > 1e-9 * R)
    throw ValidationError("zeta must lie on the boundary circle");
  if (!(std::abs(w) < R))
    throw ValidationError("w on or outside the boundary rejected");
  return (R * R - std::norm(w)) / (kTwoPi * R * std::norm(zeta - w));
}

Complex green_disk_gradient(double R, Complex z, Complex xi) {
  return std::conj(1.0 / (xi - z) +
                   std::conj(z) / (R * R - std::conj(z) * xi)) /
         kTwoPi;
}

double green_disk_smooth_part(double R, Complex z, Complex xi) {
  return std::log(R / std::abs(R * R - std::conj(z) * xi)) / kTwoPi;
}

Complex green_disk_smooth_gradient(double R, Complex z, Complex xi) {
  return std::conj(std::conj(z) / (R * R - std::conj(z) * xi)) / kTwoPi;
}

double hadamard_disk_delta(Complex z, Complex w) {
  require_interior(1.0, z, "z");
  require_interior(1.0, w, "w");
  const double num = 1.0 - std::norm(z * w);
  const double den = std::norm(1.0 - z * std::conj(w));
  return -num / den / kTwoPi;
}

double beltrami_disk_delta(Complex z, Complex w) {
  require_interior(1.0, z, "z");
  require_interior(1.0, w, "w");
  if (z == Complex(0.0) || w == Complex(0.0))
    throw ValidationError(
        "pole at the origin: use beltrami_disk_delta_origin");
  if (z == w) throw ValidationError("beltrami variation is singular at z == w");
  const Complex zwbar = z * std::conj(w);
  // |z conj(w)| < 1 keeps 1 - z conj(w) inside the right half plane, so the
  // principal branch below is never crossed.
  const Complex coef =
      zwbar + std::conj(z) / std::conj(w) + w / z - 1.0 / zwbar;
  const Complex val = coef * std::log(1.0 - zwbar) -
                      2.0 * zwbar * std::log(std::abs(z - w));
  // Imaginary parts of the individual logs cancel only mod i*R; the real
  // part of the assembled expression is the variation.
  return val.real() / (4.0 * kPi);
}

double beltrami_disk_delta_origin(Complex z) {
  require_interior(1.0, z, "z");
  return (1.0 - std::norm(z)) / (4.0 * kPi);
}

}  // namespace greenperturb
