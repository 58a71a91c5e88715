#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "greenperturb/disk_analytic.hpp"

using namespace greenperturb;

namespace {

// Brute-force midpoint polar quadrature of the gradient-form variation
// integral with p = |xi|^2, written directly from the integrand and kept
// independent of the library's quadrature machinery.
double beltrami_grad_form_bruteforce(Complex z, Complex w, int nr, int nt) {
  const double dr = 1.0 / nr;
  const double dt = kTwoPi / nt;
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < nt; ++j) {
      const Complex xi = std::polar(r, (j + 0.5) * dt);
      const Complex gz = green_disk_gradient(1.0, z, xi);
      const Complex gw = green_disk_gradient(1.0, w, xi);
      total += std::norm(xi) * (gz * std::conj(gw)).real() * r * dr * dt;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("green_disk closed-form values") {
  CHECK(green_disk(1.0, Complex(0, 0), Complex(0.5, 0)) ==
        doctest::Approx(-0.1103178000763258).epsilon(1e-12));
  CHECK(green_disk(1.0, Complex(0, 0), Complex(0.5, 0)) ==
        doctest::Approx(std::log(0.5) / kTwoPi).epsilon(1e-15));
}

TEST_CASE("green_disk symmetry and sign") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-0.99, 0.99);
  int tested = 0;
  while (tested < 10000) {
    const Complex z(unif(rng), unif(rng));
    const Complex w(unif(rng), unif(rng));
    if (std::abs(z) >= 0.995 || std::abs(w) >= 0.995 || z == w) continue;
    ++tested;
    const double g = green_disk(1.0, z, w);
    CHECK(g < 0.0);
    CHECK(g == doctest::Approx(green_disk(1.0, w, z)).epsilon(1e-13));
  }
}

TEST_CASE("green_disk boundary vanishing and pole") {
  const Complex w(0.5, 0.0);
  const Complex near_boundary(1.0 - 1e-8, 0.0);
  CHECK(std::abs(green_disk(1.0, near_boundary, w)) < 1e-7);
  CHECK(green_disk(1.0, w, w) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(green_disk(1.0, Complex(1.5, 0), w), ValidationError);
}

TEST_CASE("normal derivative of the disk Green function") {
  // Uniform harmonic measure seen from the center.
  for (double t : {0.0, 1.0, 2.5, 4.0}) {
    CHECK(normal_derivative_disk(1.0, std::polar(1.0, t), Complex(0, 0)) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
  }
  CHECK(normal_derivative_disk(1.0, Complex(1, 0), Complex(0.5, 0)) ==
        doctest::Approx(0.47746482927568601).epsilon(1e-14));
  CHECK_THROWS_AS(normal_derivative_disk(1.0, Complex(1, 0), Complex(1, 0)),
                  ValidationError);

  // Total harmonic measure is one, trapezoid rule at N = 1024.
  for (Complex w : {Complex(0.5, 0), Complex(-0.3, 0.4), Complex(0, 0)}) {
    const int n = 1024;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex zeta = std::polar(1.0, kTwoPi * j / n);
      total += normal_derivative_disk(1.0, zeta, w) * (kTwoPi / n);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("green_disk_gradient against finite differences") {
  const Complex z(0.3, -0.2), xi(0.4, 0.5);
  const double h = 1e-6;
  const Complex g = green_disk_gradient(1.0, z, xi);
  const double gx = (green_disk(1.0, z, xi + Complex(h, 0)) -
                     green_disk(1.0, z, xi - Complex(h, 0))) /
                    (2 * h);
  const double gy = (green_disk(1.0, z, xi + Complex(0, h)) -
                     green_disk(1.0, z, xi - Complex(0, h))) /
                    (2 * h);
  CHECK(g.real() == doctest::Approx(gx).epsilon(1e-7));
  CHECK(g.imag() == doctest::Approx(gy).epsilon(1e-7));

  // Splitting into log part + smooth part is consistent.
  const Complex sg = green_disk_smooth_gradient(1.0, z, xi);
  const Complex lg = (xi - z) / (kTwoPi * std::norm(xi - z));
  CHECK(std::abs(sg + lg - g) < 1e-14);
  CHECK(green_disk_smooth_part(1.0, z, xi) +
            std::log(std::abs(xi - z)) / kTwoPi ==
        doctest::Approx(green_disk(1.0, z, xi)).epsilon(1e-14));
}

TEST_CASE("hadamard_disk_delta closed-form values") {
  CHECK(hadamard_disk_delta(Complex(0, 0), Complex(0, 0)) ==
        doctest::Approx(-1.0 / kTwoPi).epsilon(1e-14));
  CHECK(hadamard_disk_delta(Complex(0.5, 0), Complex(0.5, 0)) ==
        doctest::Approx(-0.26525823848649223).epsilon(1e-14));
  CHECK(hadamard_disk_delta(Complex(0.3, 0.4), Complex(0, -0.2)) ==
        doctest::Approx(-0.13466956723160374).epsilon(1e-14));

  // Independent of z when w = 0 (reduces to d/dR of (2 pi)^{-1} ln(|z|/R)).
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.7, 0), Complex(0, 0.55)}) {
    CHECK(hadamard_disk_delta(z, Complex(0, 0)) ==
          doctest::Approx(-1.0 / kTwoPi).epsilon(1e-14));
  }
}

TEST_CASE("hadamard_disk_delta equals centered dR difference") {
  const Complex z(0.35, -0.1), w(-0.2, 0.4);
  const double h = 1e-4;
  auto g_at = [&](double R) { return green_disk(R, z, w); };
  const double fd = (g_at(1.0 + h) - g_at(1.0 - h)) / (2 * h);
  CHECK(std::abs(hadamard_disk_delta(z, w) - fd) < 1e-6);
}

TEST_CASE("beltrami_disk_delta frozen values and oracle quadrature") {
  const Complex z(0.5, 0.0), w(0.0, 0.5);
  const double closed = beltrami_disk_delta(z, w);
  CHECK(closed == doctest::Approx(0.043863260837270246).epsilon(1e-12));

  // Independent area-quadrature oracle of the gradient-form integral.
  const double quad = beltrami_grad_form_bruteforce(z, w, 400, 400);
  CHECK(std::abs(closed - quad) < 1e-3);

  CHECK(beltrami_disk_delta(Complex(0.3, 0), Complex(0, -0.4)) ==
        doctest::Approx(0.060539536997859847).epsilon(1e-12));
}

TEST_CASE("beltrami_disk_delta rotation invariance") {
  const Complex z(0.5, 0.0), w(0.0, 0.5);
  const Complex rot = std::polar(1.0, 0.7);
  CHECK(std::abs(beltrami_disk_delta(rot * z, rot * w) -
                 beltrami_disk_delta(z, w)) < 1e-12);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-0.6, 0.6);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const Complex a(unif(rng), unif(rng));
    const Complex b(unif(rng), unif(rng));
    if (std::abs(a) < 1e-3 || std::abs(b) < 1e-3 || std::abs(a - b) < 1e-3)
      continue;
    const Complex r = std::polar(1.0, angle(rng));
    CHECK(std::abs(beltrami_disk_delta(r * a, r * b) -
                   beltrami_disk_delta(a, b)) < 1e-12);
  }
}

TEST_CASE("beltrami_disk_delta w->0 limit approaches the origin formula") {
  const Complex z(0.6, 0.0);
  const double lim = beltrami_disk_delta(z, Complex(1e-3, 0.0));
  CHECK(std::abs(lim - beltrami_disk_delta_origin(z)) < 1e-2);
}

TEST_CASE("beltrami_disk_delta argument validation") {
  CHECK_THROWS_AS(beltrami_disk_delta(Complex(0, 0), Complex(0.5, 0)),
                  ValidationError);
  CHECK_THROWS_AS(beltrami_disk_delta(Complex(0.5, 0), Complex(0, 0)),
                  ValidationError);
  CHECK_THROWS_AS(beltrami_disk_delta(Complex(0.5, 0), Complex(0.5, 0)),
                  ValidationError);
}

TEST_CASE("beltrami_disk_delta_origin") {
  CHECK(beltrami_disk_delta_origin(Complex(0, 0)) ==
        doctest::Approx(0.079577471545947668).epsilon(1e-14));
  CHECK(beltrami_disk_delta_origin(Complex(0.6, 0)) ==
        doctest::Approx(0.05092958178940651).epsilon(1e-14));
  CHECK(std::abs(beltrami_disk_delta_origin(Complex(1.0 - 1e-9, 0))) < 1e-8);
}
