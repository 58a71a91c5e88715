#include "greenperturb/common.hpp"

#include <cmath>

namespace greenperturb {

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.value = [c](Complex) { return c; };
  f.gradient = [](Complex) { return Complex(0.0, 0.0); };
  f.laplacian = [](Complex) { return 0.0; };
  f.name = "const";
  return f;
}

ScalarField ScalarField::abs_squared() {
  ScalarField f;
  f.value = [](Complex z) { return std::norm(z); };
  f.gradient = [](Complex z) { return 2.0 * z; };
  f.laplacian = [](Complex) { return 4.0; };
  f.name = "abs2";
  return f;
}

ScalarField ScalarField::abs_fourth() {
  ScalarField f;
  f.value = [](Complex z) { return std::norm(z) * std::norm(z); };
  f.gradient = [](Complex z) { return 4.0 * std::norm(z) * z; };
  f.laplacian = [](Complex z) { return 16.0 * std::norm(z); };
  f.name = "abs4";
  return f;
}

ScalarField ScalarField::real_part() {
  ScalarField f;
  f.value = [](Complex z) { return z.real(); };
  f.gradient = [](Complex) { return Complex(1.0, 0.0); };
  f.laplacian = [](Complex) { return 0.0; };
  f.name = "re";
  return f;
}

ScalarField ScalarField::saddle() {
  ScalarField f;
  f.value = [](Complex z) { return z.real() * z.real() - z.imag() * z.imag(); };
  f.gradient = [](Complex z) { return 2.0 * std::conj(z); };
  f.laplacian = [](Complex) { return 0.0; };
  f.name = "saddle";
  return f;
}

ScalarField ScalarField::affine(double a, double b, const ScalarField& f) {
  ScalarField g;
  auto fv = f.value;
  g.value = [a, b, fv](Complex z) { return a + b * fv(z); };
  if (f.gradient) {
    auto fg = f.gradient;
    g.gradient = [b, fg](Complex z) { return b * fg(z); };
  }
  if (f.laplacian) {
    auto fl = f.laplacian;
    g.laplacian = [b, fl](Complex z) { return b * fl(z); };
  }
  g.name = f.name;
  return g;
}

}  // namespace greenperturb
