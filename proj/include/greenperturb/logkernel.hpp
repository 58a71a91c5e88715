#pragma once

#include <cmath>

#include "greenperturb/common.hpp"

namespace greenperturb {

/// Free-space log kernel Phi_w(z) = (2*pi)^{-1} ln|z - w|.
inline double log_kernel(Complex z, Complex w) {
  return std::log(std::abs(z - w)) / kTwoPi;
}

/// Gradient of Phi_w with respect to z, packed as gx + i*gy.
inline Complex log_kernel_gradient(Complex z, Complex w) {
  const Complex d = z - w;
  return d / (kTwoPi * std::norm(d));
}

namespace detail {

// Antiderivative of ln sqrt(x^2+y^2) in both variables; the rectangle
// integral is the signed corner sum.
inline double corner_log(double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) return 0.0;
  double t = x * y * (0.5 * std::log(r2) - 1.5);
  if (x != 0.0) t += 0.5 * x * x * std::atan(y / x);
  if (y != 0.0) t += 0.5 * y * y * std::atan(x / y);
  return t;
}

// Antiderivative for the x-component of (x,y)/(x^2+y^2).
inline double corner_gradx(double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) return 0.0;
  double t = 0.5 * y * std::log(r2) - y;
  if (x != 0.0) t += x * std::atan(y / x);
  return t;
}

}  // namespace detail

/// Exact integral of ln|.| over the rectangle [x0,x1]x[y0,y1] (pole at 0).
inline double integral_log_rect(double x0, double x1, double y0, double y1) {
  using detail::corner_log;
  return corner_log(x1, y1) - corner_log(x0, y1) - corner_log(x1, y0) +
         corner_log(x0, y0);
}

/// Exact integral of (x,y)/(x^2+y^2) over the same rectangle, as gx + i*gy.
inline Complex integral_grad_log_rect(double x0, double x1, double y0,
                                      double y1) {
  using detail::corner_gradx;
  const double gx = corner_gradx(x1, y1) - corner_gradx(x0, y1) -
                    corner_gradx(x1, y0) + corner_gradx(x0, y0);
  // y-component: same antiderivative with the roles of x and y swapped.
  const double gy = corner_gradx(y1, x1) - corner_gradx(y0, x1) -
                    corner_gradx(y1, x0) + corner_gradx(y0, x0);
  return {gx, gy};
}

/// Average of Phi_w over a rectangle centered at `center` with half-sides
/// (hx, hy), rotated by `angle`.
inline double log_kernel_cell_average(Complex center, double hx, double hy,
                                      double angle, Complex w) {
  const Complex local = std::exp(Complex(0.0, -angle)) * (w - center);
  const double v = integral_log_rect(-hx - local.real(), hx - local.real(),
                                     -hy - local.imag(), hy - local.imag());
  return v / (4.0 * hx * hy * kTwoPi);
}

/// Integral (not average) of grad Phi_w over the same rectangle.
inline Complex log_kernel_cell_gradient_integral(Complex center, double hx,
                                                 double hy, double angle,
                                                 Complex w) {
  const Complex rot = std::exp(Complex(0.0, angle));
  const Complex local = std::conj(rot) * (w - center);
  const Complex v = integral_grad_log_rect(
      -hx - local.real(), hx - local.real(), -hy - local.imag(),
      hy - local.imag());
  return rot * v / kTwoPi;
}

}  // namespace greenperturb
