#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace greenperturb {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// First positive zero of the Bessel function J0; the principal Dirichlet
// eigenvalue of the unit disk is kJ01^2.
inline constexpr double kJ01 = 2.4048255576957728;

/// Rejected input or violated precondition (CLI exit code 1).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: non-convergence, resonance, singular system
/// (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar coefficient field on the plane. `gradient` and `laplacian` are
/// optional closed forms; operations that need them fall back to finite
/// differences when they are absent.
struct ScalarField {
  std::function<double(Complex)> value;
  std::function<Complex(Complex)> gradient;  // gx + i*gy, may be empty
  std::function<double(Complex)> laplacian;  // may be empty
  std::string name = "field";

  double operator()(Complex z) const { return value(z); }

  static ScalarField constant(double c);
  static ScalarField abs_squared();   // |z|^2
  static ScalarField abs_fourth();    // |z|^4
  static ScalarField real_part();     // Re z
  static ScalarField saddle();        // Re z^2 = x^2 - y^2 (harmonic)
  // a + b*f, with derivatives scaled accordingly.
  static ScalarField affine(double a, double b, const ScalarField& f);
};

}  // namespace greenperturb
