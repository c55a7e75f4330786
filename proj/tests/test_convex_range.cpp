#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "specbench/convex_region.hpp"
#include "specbench/rng.hpp"
#include "support/oracles.hpp"

using namespace specbench;

namespace {

ComplexMatrix random_matrix(uint64_t seed, int n) {
  CounterRng rng(seed);
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rng.next_complex_gaussian();
  return m;
}

// Brute-force support of a finite point set.
double point_set_support(const std::vector<cplx>& pts, double theta) {
  double best = -1e300;
  for (cplx p : pts)
    best = std::max(best, std::real(std::exp(cplx(0.0, -theta)) * p));
  return best;
}

const ComplexMatrix kJ2(2, {0.0, 1.0, 0.0, 0.0});

}  // namespace

TEST_CASE("disc_region support and witnesses") {
  const cplx c(0.7, -0.3);
  const double r = 1.9;
  const ConvexRegion d = disc_region(c, r, 360);
  REQUIRE(d.grid_size() == 360);
  for (int k = 0; k < 360; ++k) {
    const double theta = d.angle(k);
    const double expect = std::real(std::exp(cplx(0.0, -theta)) * c) + r;
    CHECK(d.support(k) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(std::abs(d.witness(k) - c) == doctest::Approx(r).epsilon(1e-13));
  }
  // Grid max of h undershoots the continuous max |c| + r by O(dtheta^2).
  CHECK(d.scale() == doctest::Approx(1.0 + std::abs(c) + r).epsilon(1e-4));
  CHECK(d.circumradius() == doctest::Approx(r).epsilon(1e-4));
}

TEST_CASE("ellipse_region against dense boundary sampling") {
  const cplx c(0.2, 0.1);
  const double a = 2.0, b = 0.5;
  const ConvexRegion e = ellipse_region(c, a, b, 256);
  for (int k = 0; k < 256; k += 7) {
    const double theta = e.angle(k);
    double brute = -1e300;
    for (int j = 0; j < 20000; ++j) {
      const double t = 2.0 * kPi * j / 20000;
      const cplx z = c + cplx(a * std::cos(t), b * std::sin(t));
      brute = std::max(brute, std::real(std::exp(cplx(0.0, -theta)) * z));
    }
    CHECK(e.support(k) == doctest::Approx(brute).epsilon(1e-7));
  }
  CHECK(e.support(0) == doctest::Approx(c.real() + a).epsilon(1e-13));
  CHECK(e.support(64) == doctest::Approx(c.imag() + b).epsilon(1e-13));
}

TEST_CASE("from_support rejects tiny grids and bogus witnesses") {
  std::vector<double> h(6, 1.0);
  std::vector<cplx> w(6, cplx(1.0));
  CHECK_THROWS_AS((void)ConvexRegion::from_support(h, w), Error);

  // Witness failing to attain its own support value.
  const ConvexRegion d = disc_region(0.0, 1.0, 64);
  std::vector<cplx> bad = d.witness();
  bad[5] = 0.0;
  try {
    (void)ConvexRegion::from_support(d.support(), bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }

  // Witness attaining its own direction but violating another halfplane:
  // unit-disc witnesses with one support value pushed far below.
  std::vector<double> dented = d.support();
  dented[0] = 0.1;
  std::vector<cplx> w2 = d.witness();
  w2[0] = cplx(0.1, 0.9);  // attains h(0)=0.1, stays near the circle
  CHECK_THROWS_AS((void)ConvexRegion::from_support(dented, w2), Error);
}

TEST_CASE("numrange_support: nilpotent disc and normal point sets") {
  // <J2 x, x> ranges over the closed disc of radius 1/2.
  for (double theta : {0.0, 0.4, 1.7, 3.9, 6.0}) {
    const SupportPoint s = numrange_support(kJ2, theta);
    CHECK(s.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(s.witness) == doctest::Approx(0.5).epsilon(1e-10));
  }

  const std::vector<cplx> spec = {cplx(1.0, 1.0), cplx(-0.5, 0.2),
                                  cplx(0.3, -2.0)};
  const ComplexMatrix d = ComplexMatrix::diag(spec);
  for (int k = 0; k < 40; ++k) {
    const double theta = 2.0 * kPi * k / 40;
    const SupportPoint s = numrange_support(d, theta);
    CHECK(s.value ==
          doctest::Approx(point_set_support(spec, theta)).epsilon(1e-12));
  }
}

TEST_CASE("numrange_support witness attains and random probes stay below") {
  const ComplexMatrix t = random_matrix(808, 6);
  CounterRng rng(909);
  for (double theta : {0.0, 1.0, 2.5}) {
    const SupportPoint s = numrange_support(t, theta);
    // Probing from random unit vectors never beats the top eigenvalue.
    for (int i = 0; i < 200; ++i) {
      const std::vector<cplx> x = random_unit_vector(rng, 6);
      const cplx q = inner(mat_vec(t, x), x);
      CHECK(std::real(std::exp(cplx(0.0, -theta)) * q) <= s.value + 1e-12);
    }
    CHECK(std::real(std::exp(cplx(0.0, -theta)) * s.witness) ==
          doctest::Approx(s.value).epsilon(1e-10));
  }
}

TEST_CASE("numrange_boundary of scaled Jordan block is a disc") {
  ComplexMatrix j(2, {0.0, 2.0, 0.0, 0.0});
  const ConvexRegion w = numrange_boundary(j, 720);
  const ConvexRegion d = disc_region(0.0, 1.0, 720);
  CHECK(hausdorff(w, d) <= 1e-12);
}

TEST_CASE("hull_of_union matches pointwise max and is idempotent") {
  const ConvexRegion d1 = disc_region(cplx(-1.0, 0.0), 0.5, 720);
  const ConvexRegion d2 = disc_region(cplx(2.0, 1.0), 1.5, 720);
  const ConvexRegion h = hull_of_union(d1, d2);
  for (int k = 0; k < 720; k += 13)
    CHECK(h.support(k) ==
          doctest::Approx(std::max(d1.support(k), d2.support(k)))
              .epsilon(1e-14));
  CHECK(hausdorff(hull_of_union(d1, d1), d1) == 0.0);

  // Nested discs: the hull is the big one.
  const ConvexRegion inner = disc_region(cplx(0.1), 0.3, 720);
  const ConvexRegion outer = disc_region(0.0, 2.0, 720);
  CHECK(hausdorff(hull_of_union(inner, outer), outer) == 0.0);
}

TEST_CASE("hausdorff between discs") {
  const ConvexRegion d1 = disc_region(cplx(0.3, 0.4), 1.0, 720);
  const ConvexRegion d2 = disc_region(0.0, 1.2, 720);
  // sup over angles of |Re(e^{-i t}(c1-c2)) + (r1-r2)| = |c1-c2| + |r1-r2|.
  CHECK(hausdorff(d1, d2) == doctest::Approx(0.7).epsilon(1e-4));
  CHECK(hausdorff(d1, d1) == 0.0);

  const ConvexRegion coarse = disc_region(0.0, 1.0, 64);
  CHECK_THROWS_AS((void)hausdorff(d1, coarse), Error);
}

TEST_CASE("contains and outside_distance on a disc") {
  const ConvexRegion d = disc_region(0.0, 1.0, 720);
  CHECK(contains(d, cplx(0.2, 0.3), 0.0));
  CHECK(contains(d, cplx(0.9, 0.0), 0.05));
  CHECK_FALSE(contains(d, cplx(0.99, 0.0), 0.05));
  CHECK_FALSE(contains(d, cplx(1.4, 0.0), 0.0));
  // A negative margin loosens the test.
  CHECK(contains(d, cplx(1.05, 0.0), -0.1));

  CHECK(outside_distance(d, cplx(0.4, -0.2)) == 0.0);
  CHECK(outside_distance(d, cplx(3.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(outside_distance(d, cplx(0.0, -2.5)) ==
        doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("inflate adds a disc") {
  const ConvexRegion e = ellipse_region(0.0, 2.0, 1.0, 720);
  const ConvexRegion big = inflate(e, 0.25);
  for (int k = 0; k < 720; ++k)
    CHECK(big.support(k) == doctest::Approx(e.support(k) + 0.25).epsilon(1e-14));
  // Inflated witnesses still attain their supports (validated on build).
  CHECK(big.scale() == doctest::Approx(1.0 + 2.25).epsilon(1e-12));
}

TEST_CASE("direct sums: hull identity holds to machine precision") {
  for (uint64_t seed : {31u, 32u, 33u, 34u, 35u}) {
    const ComplexMatrix a = random_matrix(seed, 4);
    const ComplexMatrix b = random_matrix(seed + 1000, 3);
    CHECK(verify_hull_identity(a, b, 360) <= 1e-12 * (1.0 + spectral_norm(a) +
                                                      spectral_norm(b)));
  }
  // Normal case with a known hull: spectra on the corners of a square.
  const ComplexMatrix a = ComplexMatrix::diag({cplx(1, 1), cplx(-1, 1)});
  const ComplexMatrix b = ComplexMatrix::diag({cplx(-1, -1), cplx(1, -1)});
  CHECK(verify_hull_identity(a, b, 720) <= 1e-12);
}
