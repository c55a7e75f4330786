#include "specbench/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace specbench {

namespace {

double wrap_param(double t) {
  double frac = t / (2.0 * kPi);
  frac -= std::floor(frac);
  return frac * 2.0 * kPi;
}

void check_positive(double v, const char* what) {
  require(std::isfinite(v) && v > 0.0, ErrorKind::BadCurve, what);
}

}  // namespace

BoundaryCurve BoundaryCurve::disc(cplx center, double radius) {
  check_positive(radius, "disc radius must be positive");
  BoundaryCurve c;
  c.kind_ = CurveKind::Disc;
  c.center_ = center;
  c.radius_ = radius;
  c.perimeter_ = 2.0 * kPi * radius;
  c.max_speed_ = radius;
  return c;
}

BoundaryCurve BoundaryCurve::ellipse(cplx center, double a, double b) {
  check_positive(a, "ellipse semi-axis a must be positive");
  check_positive(b, "ellipse semi-axis b must be positive");
  BoundaryCurve c;
  c.kind_ = CurveKind::Ellipse;
  c.center_ = center;
  c.a_ = a;
  c.b_ = b;
  // |gamma'| is smooth and 2pi-periodic, so the trapezoid sum converges
  // geometrically; 1 << 16 nodes puts it at machine precision.
  const int n = 1 << 16;
  double sum = 0.0;
  double mx = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    const double speed = std::hypot(a * std::sin(t), b * std::cos(t));
    sum += speed;
    mx = std::max(mx, speed);
  }
  c.perimeter_ = sum * 2.0 * kPi / n;
  c.max_speed_ = mx;
  return c;
}

BoundaryCurve BoundaryCurve::smoothed_polygon(std::vector<cplx> vertices,
                                              double rounding) {
  const size_t k = vertices.size();
  require(k >= 3, ErrorKind::BadCurve, "polygon needs at least 3 vertices");
  check_positive(rounding, "rounding radius must be positive");

  cplx centroid(0.0);
  for (cplx v : vertices) centroid += v;
  centroid /= static_cast<double>(k);
  double circum = 0.0;
  for (cplx v : vertices) circum = std::max(circum, std::abs(v - centroid));
  require(circum > 0.0, ErrorKind::BadCurve, "degenerate vertex set");
  require(rounding >= 0.05 * circum, ErrorKind::BadCurve,
          "rounding radius below 0.05x circumradius");

  // Edge directions and exterior turn angles; strict convexity and
  // counterclockwise orientation make every turn land in (0, pi).
  std::vector<cplx> dir(k);
  std::vector<double> edge_len(k);
  for (size_t i = 0; i < k; ++i) {
    const cplx e = vertices[(i + 1) % k] - vertices[i];
    edge_len[i] = std::abs(e);
    require(edge_len[i] > 1e-12 * circum, ErrorKind::BadCurve,
            "repeated polygon vertex");
    dir[i] = e / edge_len[i];
  }
  std::vector<double> turn(k);   // exterior angle at vertex i
  std::vector<double> trim(k);   // tangent-point offset at vertex i
  std::vector<cplx> arc_center(k);
  for (size_t i = 0; i < k; ++i) {
    const cplx prev = dir[(i + k - 1) % k];
    const cplx cur = dir[i];
    const double cross = prev.real() * cur.imag() - prev.imag() * cur.real();
    const double dot = prev.real() * cur.real() + prev.imag() * cur.imag();
    require(cross > 1e-12, ErrorKind::BadCurve,
            "vertices must form a strictly convex counterclockwise loop");
    turn[i] = std::atan2(cross, dot);
    trim[i] = rounding * std::tan(0.5 * turn[i]);
    const cplx tangent_in = vertices[i] - trim[i] * prev;
    arc_center[i] = tangent_in + rounding * cplx(0.0, 1.0) * prev;
  }
  for (size_t i = 0; i < k; ++i)
    require(edge_len[i] >= trim[i] + trim[(i + 1) % k] + 1e-12 * circum,
            ErrorKind::BadCurve, "rounding radius too large for an edge");

  BoundaryCurve c;
  c.kind_ = CurveKind::SmoothedPolygon;
  c.vertices_ = vertices;
  c.rounding_ = rounding;
  c.center_ = centroid;

  // Pieces in travel order: straight run of edge i, then the arc at the far
  // corner i+1.  The curve starts at the tangent point leaving vertex 0.
  for (size_t i = 0; i < k; ++i) {
    const size_t next = (i + 1) % k;
    Piece straight;
    straight.is_arc = false;
    straight.start = vertices[i] + trim[i] * dir[i];
    straight.dir = dir[i];
    straight.length = edge_len[i] - trim[i] - trim[next];
    c.pieces_.push_back(straight);

    Piece arc;
    arc.is_arc = true;
    arc.arc_center = arc_center[next];
    const cplx tangent_in = vertices[next] - trim[next] * dir[i];
    arc.arc_start_angle = std::arg(tangent_in - arc.arc_center);
    arc.length = rounding * turn[next];
    arc.start = tangent_in;
    arc.dir = dir[i];
    c.pieces_.push_back(arc);
  }
  c.cum_.assign(c.pieces_.size() + 1, 0.0);
  for (size_t i = 0; i < c.pieces_.size(); ++i)
    c.cum_[i + 1] = c.cum_[i] + c.pieces_[i].length;
  c.perimeter_ = c.cum_.back();
  c.max_speed_ = c.perimeter_ / (2.0 * kPi);  // arclength-proportional
  return c;
}

cplx BoundaryCurve::point(double t) const {
  t = wrap_param(t);
  switch (kind_) {
    case CurveKind::Disc:
      return center_ + radius_ * cplx(std::cos(t), std::sin(t));
    case CurveKind::Ellipse:
      return center_ + cplx(a_ * std::cos(t), b_ * std::sin(t));
    case CurveKind::SmoothedPolygon: {
      const double s = t / (2.0 * kPi) * perimeter_;
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
      size_t j = static_cast<size_t>(it - cum_.begin());
      j = (j == 0) ? 0 : j - 1;
      if (j >= pieces_.size()) j = pieces_.size() - 1;
      const Piece& p = pieces_[j];
      const double u = s - cum_[j];
      if (!p.is_arc) return p.start + u * p.dir;
      const double ang = p.arc_start_angle + u / rounding_;
      return p.arc_center + rounding_ * cplx(std::cos(ang), std::sin(ang));
    }
  }
  fail(ErrorKind::BadCurve, "unknown curve kind");
}

cplx BoundaryCurve::derivative(double t) const {
  t = wrap_param(t);
  switch (kind_) {
    case CurveKind::Disc:
      return radius_ * cplx(-std::sin(t), std::cos(t));
    case CurveKind::Ellipse:
      return cplx(-a_ * std::sin(t), b_ * std::cos(t));
    case CurveKind::SmoothedPolygon: {
      const double s = t / (2.0 * kPi) * perimeter_;
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
      size_t j = static_cast<size_t>(it - cum_.begin());
      j = (j == 0) ? 0 : j - 1;
      if (j >= pieces_.size()) j = pieces_.size() - 1;
      const Piece& p = pieces_[j];
      const double u = s - cum_[j];
      cplx tangent;
      if (!p.is_arc) {
        tangent = p.dir;
      } else {
        const double ang = p.arc_start_angle + u / rounding_;
        tangent = cplx(-std::sin(ang), std::cos(ang));
      }
      return tangent * max_speed_;
    }
  }
  fail(ErrorKind::BadCurve, "unknown curve kind");
}

double BoundaryCurve::curvature(double t) const {
  t = wrap_param(t);
  switch (kind_) {
    case CurveKind::Disc:
      return 1.0 / radius_;
    case CurveKind::Ellipse: {
      const double g = a_ * a_ * std::sin(t) * std::sin(t) +
                       b_ * b_ * std::cos(t) * std::cos(t);
      return a_ * b_ / (g * std::sqrt(g));
    }
    case CurveKind::SmoothedPolygon: {
      const double s = t / (2.0 * kPi) * perimeter_;
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
      size_t j = static_cast<size_t>(it - cum_.begin());
      j = (j == 0) ? 0 : j - 1;
      if (j >= pieces_.size()) j = pieces_.size() - 1;
      return pieces_[j].is_arc ? 1.0 / rounding_ : 0.0;
    }
  }
  fail(ErrorKind::BadCurve, "unknown curve kind");
}

ConvexRegion BoundaryCurve::region(int m) const {
  switch (kind_) {
    case CurveKind::Disc:
      return disc_region(center_, radius_, m);
    case CurveKind::Ellipse:
      return ellipse_region(center_, a_, b_, m);
    case CurveKind::SmoothedPolygon: {
      // The rounded polygon is the hull of the corner discs, so its support
      // is the max over arc centers plus the rounding radius.
      std::vector<cplx> centers;
      for (const Piece& p : pieces_)
        if (p.is_arc) centers.push_back(p.arc_center);
      std::vector<double> h(m);
      std::vector<cplx> wit(m);
      for (int kk = 0; kk < m; ++kk) {
        const double theta = 2.0 * kPi * kk / m;
        const cplx e = std::exp(cplx(0.0, -theta));
        double best = -1e300;
        cplx best_c;
        for (cplx o : centers) {
          const double v = (e * o).real();
          if (v > best) {
            best = v;
            best_c = o;
          }
        }
        h[kk] = best + rounding_;
        wit[kk] = best_c + rounding_ * std::exp(cplx(0.0, theta));
      }
      return ConvexRegion::from_support(h, wit);
    }
  }
  fail(ErrorKind::BadCurve, "unknown curve kind");
}

BoundaryGrid discretize(const BoundaryCurve& curve, int m) {
  require(m >= 32, ErrorKind::BadInput, "need at least 32 nodes");
  require(m % 2 == 0, ErrorKind::BadInput, "node count must be even");

  BoundaryGrid grid{m, {}, {}, {}, {}, curve.region(720), 0.0};
  grid.nodes.reserve(m);
  double sum_w = 0.0;
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * j / m;
    const cplx d = curve.derivative(t);
    const double speed = std::abs(d);
    require(speed >= 1e-9, ErrorKind::BadCurve, "stalled parametrization");
    grid.nodes.push_back(curve.point(t));
    // Outward for a counterclockwise curve.
    grid.normals.push_back(cplx(0.0, -1.0) * d / speed);
    grid.weights.push_back(speed * 2.0 * kPi / m);
    const double kap = curve.curvature(t);
    require(kap >= 0.0, ErrorKind::BadCurve, "negative curvature");
    grid.curvatures.push_back(kap);
    sum_w += grid.weights.back();
  }
  require(std::abs(sum_w - curve.perimeter()) <= 1e-6 * curve.perimeter(),
          ErrorKind::BadCurve, "weights disagree with the perimeter");
  grid.spacing = 2.0 * kPi / m * curve.max_speed();
  return grid;
}

}  // namespace specbench
