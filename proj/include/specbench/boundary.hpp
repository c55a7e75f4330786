#pragma once

#include <vector>

#include "specbench/convex_region.hpp"

namespace specbench {

enum class CurveKind { Disc, Ellipse, SmoothedPolygon };

// Closed convex C^1 curve, counterclockwise on t in [0, 2pi).  Polygons get
// mandatory corner rounding (tangent arcs, radius >= 0.05x circumradius):
// true corners would make the quadrature's diagonal limit node-dependent.
class BoundaryCurve {
 public:
  static BoundaryCurve disc(cplx center, double radius);
  static BoundaryCurve ellipse(cplx center, double a, double b);
  // Vertices must be a strictly convex counterclockwise loop.  The rounded
  // curve is arclength-parametrized: straight runs along the original edges,
  // arcs of the given radius at the corners.
  static BoundaryCurve smoothed_polygon(std::vector<cplx> vertices,
                                        double rounding);

  CurveKind kind() const { return kind_; }
  cplx point(double t) const;
  cplx derivative(double t) const;
  double curvature(double t) const;
  double perimeter() const { return perimeter_; }
  double max_speed() const { return max_speed_; }  // max |gamma'|

  // Support-function region of the enclosed convex set.
  ConvexRegion region(int m) const;

  // Parameter access for serialization.
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  const std::vector<cplx>& vertices() const { return vertices_; }
  double rounding() const { return rounding_; }

 private:
  BoundaryCurve() = default;

  // One arclength piece of a rounded polygon.
  struct Piece {
    bool is_arc;
    double length;
    cplx start;   // straight: start point
    cplx dir;     // straight: unit direction
    cplx arc_center;
    double arc_start_angle;
  };

  CurveKind kind_ = CurveKind::Disc;
  cplx center_;
  double radius_ = 0.0;
  double a_ = 0.0, b_ = 0.0;
  std::vector<cplx> vertices_;
  double rounding_ = 0.0;
  std::vector<Piece> pieces_;
  std::vector<double> cum_;  // cumulative piece lengths
  double perimeter_ = 0.0;
  double max_speed_ = 0.0;
};

// Quadrature nodes on a curve: equal parameter steps, trapezoid weights
// w_j = |gamma'(t_j)| 2pi/M, outward normals n_j = -i gamma'/|gamma'|.
struct BoundaryGrid {
  int M;
  std::vector<cplx> nodes;
  std::vector<cplx> normals;
  std::vector<double> weights;
  std::vector<double> curvatures;
  ConvexRegion region;  // enclosed set, 720 directions
  double spacing;       // (2pi/M) * max |gamma'|: the margin unit

  // All interior-evaluation margins are multiples of the grid spacing.
  double margin() const { return 5.0 * spacing; }
};

BoundaryGrid discretize(const BoundaryCurve& curve, int m);

}  // namespace specbench
