#pragma once

#include <vector>

#include "specbench/complex_matrix.hpp"

namespace specbench {

// Support-function representation of a compact convex set on a uniform angle
// grid theta_k = 2 pi k / m.  Each direction carries a witness boundary point
// attaining (or approximating) the support value, which makes hulls, Hausdorff
// gaps and membership tests one-liners.  Degenerate sets (segments, points)
// are fine: the representation never needs an interior.
class ConvexRegion {
 public:
  static ConvexRegion from_support(std::vector<double> support,
                                   std::vector<cplx> witness);

  int grid_size() const { return static_cast<int>(support_.size()); }
  double angle(int k) const;
  double support(int k) const { return support_[k]; }
  const std::vector<double>& support() const { return support_; }
  cplx witness(int k) const { return witness_[k]; }
  const std::vector<cplx>& witness() const { return witness_; }

  // 1 + max_k |h(theta_k)|; the tolerance unit used by all region checks.
  double scale() const { return scale_; }
  double circumradius() const;

 private:
  ConvexRegion() = default;
  std::vector<double> support_;
  std::vector<cplx> witness_;
  double scale_ = 1.0;
};

// Analytic regions on an m-point grid.
ConvexRegion disc_region(cplx center, double radius, int m);
ConvexRegion ellipse_region(cplx center, double a, double b, int m);

// Support h(theta) of the numerical range: the top eigenvalue of
// Re(e^{-i theta} T).  Witness is <T v, v> for the top eigenvector; ties on
// the top eigenvalue break toward the lowest eigenvector column.
struct SupportPoint {
  double value;
  cplx witness;
};
SupportPoint numrange_support(const ComplexMatrix& t, double theta);

ConvexRegion numrange_boundary(const ComplexMatrix& t, int m);

// Pointwise max of supports; witness taken from whichever region attains the
// max (first region on ties).
ConvexRegion hull_of_union(const ConvexRegion& r1, const ConvexRegion& r2);

// max_k |h1 - h2|; grids must match.
double hausdorff(const ConvexRegion& r1, const ConvexRegion& r2);

// True iff Re(e^{-i theta_k} z) <= h(theta_k) - margin for every k.
// Negative margins loosen the test.
bool contains(const ConvexRegion& r, cplx z, double margin);

// Lower bound for dist(z, R): max_k (Re(e^{-i theta_k} z) - h(theta_k)),
// clamped at zero.  Exact as m -> infinity, conservative for finite m.
double outside_distance(const ConvexRegion& r, cplx z);

// Inflate by a disc of the given radius (Minkowski sum).
ConvexRegion inflate(const ConvexRegion& r, double margin);

// Hausdorff gap between W(A (+) B) and conv(W(A) u W(B)) at grid size m.
double verify_hull_identity(const ComplexMatrix& a, const ComplexMatrix& b,
                            int m);

}  // namespace specbench
