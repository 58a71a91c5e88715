#pragma once

#include "greenperturb/common.hpp"

namespace greenperturb {

/// Green function of the disk of radius R, normalized so that
/// Laplacian(g_w) = delta_w and g ~ (2*pi)^{-1} ln|z-w| near the pole.
/// g(z,w) = (2*pi)^{-1} ln| R (z-w) / (R^2 - z conj(w)) |.
/// Returns -infinity at z == w.
double green_disk(double R, Complex z, Complex w);

/// Outward normal derivative of g(.,w) at a boundary point zeta, |zeta| = R:
/// the harmonic-measure density (R^2 - |w|^2) / (2 pi R |zeta - w|^2).
double normal_derivative_disk(double R, Complex zeta, Complex w);

/// Gradient of g(z, xi) with respect to xi, packed as gx + i*gy.
Complex green_disk_gradient(double R, Complex z, Complex xi);

/// Smooth part H(z, xi) = g(z, xi) - (2*pi)^{-1} ln|xi - z|; finite on the
/// diagonal.
double green_disk_smooth_part(double R, Complex z, Complex xi);
Complex green_disk_smooth_gradient(double R, Complex z, Complex xi);

/// First variation of the unit-disk Green function under the uniform
/// radial perturbation p == 1 (d/dR at R = 1):
/// -(2*pi)^{-1} (1 - |zw|^2) / |1 - z conj(w)|^2.
double hadamard_disk_delta(Complex z, Complex w);

/// First variation of the unit-disk Green function when the Laplacian is
/// perturbed into div((1 + eps |xi|^2) grad), evaluated per unit eps.
/// Requires z, w != 0 and z != w; use beltrami_disk_delta_origin for w = 0.
double beltrami_disk_delta(Complex z, Complex w);

/// Same variation with the pole at the origin: (1 - |z|^2) / (4 pi).
double beltrami_disk_delta_origin(Complex z);

/// Thin value-object wrapper around the closed forms above.
struct DiskGreen {
  double radius = 1.0;
  double operator()(Complex z, Complex w) const {
    return green_disk(radius, z, w);
  }
  double normal_derivative(Complex zeta, Complex w) const {
    return normal_derivative_disk(radius, zeta, w);
  }
  Complex gradient(Complex z, Complex xi) const {
    return green_disk_gradient(radius, z, xi);
  }
};

}  // namespace greenperturb
