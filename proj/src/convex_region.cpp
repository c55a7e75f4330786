#include "specbench/convex_region.hpp"

#include <algorithm>
#include <cmath>

namespace specbench {

namespace {
cplx unit(double theta) { return cplx(std::cos(theta), std::sin(theta)); }
}  // namespace

double ConvexRegion::angle(int k) const {
  return 2.0 * kPi * k / grid_size();
}

ConvexRegion ConvexRegion::from_support(std::vector<double> support,
                                        std::vector<cplx> witness) {
  require(support.size() >= 8, ErrorKind::Validation,
          "ConvexRegion needs at least 8 directions");
  require(support.size() == witness.size(), ErrorKind::Validation,
          "support/witness length mismatch");

  ConvexRegion r;
  r.support_ = std::move(support);
  r.witness_ = std::move(witness);

  double hmax = 0.0;
  for (double h : r.support_) {
    require(std::isfinite(h), ErrorKind::Validation, "non-finite support");
    hmax = std::max(hmax, std::abs(h));
  }
  r.scale_ = 1.0 + hmax;

  const int m = r.grid_size();
  const double tol = 1e-9 * r.scale_;
  // Witnesses must attain their own direction and stay inside every other
  // supporting half-plane; this is what makes the set nonempty and convex.
  for (int k = 0; k < m; ++k) {
    const double reach =
        (std::conj(unit(r.angle(k))) * r.witness_[k]).real();
    require(std::abs(reach - r.support_[k]) <= tol, ErrorKind::Validation,
            "witness does not attain its support value");
  }
  for (int j = 0; j < m; ++j) {
    const cplx dir = std::conj(unit(r.angle(j)));
    for (int k = 0; k < m; ++k) {
      require((dir * r.witness_[k]).real() <= r.support_[j] + tol,
              ErrorKind::Validation,
              "witness escapes a supporting half-plane; set would be empty");
    }
  }
  return r;
}

double ConvexRegion::circumradius() const {
  cplx c = 0.0;
  for (const cplx& w : witness_) c += w;
  c /= static_cast<double>(witness_.size());
  double r = 0.0;
  for (const cplx& w : witness_) r = std::max(r, std::abs(w - c));
  return r;
}

ConvexRegion disc_region(cplx center, double radius, int m) {
  require(radius >= 0.0, ErrorKind::BadInput, "disc radius must be >= 0");
  std::vector<double> h(m);
  std::vector<cplx> w(m);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * kPi * k / m;
    h[k] = (std::conj(unit(theta)) * center).real() + radius;
    w[k] = center + radius * unit(theta);
  }
  return ConvexRegion::from_support(std::move(h), std::move(w));
}

ConvexRegion ellipse_region(cplx center, double a, double b, int m) {
  require(a > 0.0 && b > 0.0, ErrorKind::BadInput, "ellipse semi-axes > 0");
  std::vector<double> h(m);
  std::vector<cplx> w(m);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * kPi * k / m;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double r = std::sqrt(a * a * ct * ct + b * b * st * st);
    h[k] = (std::conj(unit(theta)) * center).real() + r;
    // Boundary point where the outward normal points along theta.
    w[k] = center + cplx(a * a * ct / r, b * b * st / r);
  }
  return ConvexRegion::from_support(std::move(h), std::move(w));
}

SupportPoint numrange_support(const ComplexMatrix& t, double theta) {
  const int n = t.dim();
  const cplx rot = std::conj(unit(theta));
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.at(i, j) =
          0.5 * (rot * t.at(i, j) + std::conj(rot * t.at(j, i)));

  const HermitianEigen eig = hermitian_eigen(h);
  const double top = eig.values.back();
  const double tie = 1e-12 * (1.0 + std::abs(top));
  int col = n - 1;
  while (col > 0 && eig.values[col - 1] >= top - tie) --col;

  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = eig.vectors.at(i, col);
  const cplx witness = inner(mat_vec(t, v), v);
  return {top, witness};
}

ConvexRegion numrange_boundary(const ComplexMatrix& t, int m) {
  require(m >= 8, ErrorKind::BadInput, "grid size must be >= 8");
  std::vector<double> h(m);
  std::vector<cplx> w(m);
  for (int k = 0; k < m; ++k) {
    const SupportPoint sp = numrange_support(t, 2.0 * kPi * k / m);
    h[k] = sp.value;
    w[k] = sp.witness;
  }
  return ConvexRegion::from_support(std::move(h), std::move(w));
}

ConvexRegion hull_of_union(const ConvexRegion& r1, const ConvexRegion& r2) {
  require(r1.grid_size() == r2.grid_size(), ErrorKind::GridMismatch,
          "hull_of_union needs matching grids");
  const int m = r1.grid_size();
  std::vector<double> h(m);
  std::vector<cplx> w(m);
  for (int k = 0; k < m; ++k) {
    if (r1.support(k) >= r2.support(k)) {
      h[k] = r1.support(k);
      w[k] = r1.witness(k);
    } else {
      h[k] = r2.support(k);
      w[k] = r2.witness(k);
    }
  }
  return ConvexRegion::from_support(std::move(h), std::move(w));
}

double hausdorff(const ConvexRegion& r1, const ConvexRegion& r2) {
  require(r1.grid_size() == r2.grid_size(), ErrorKind::GridMismatch,
          "hausdorff needs matching grids");
  double d = 0.0;
  for (int k = 0; k < r1.grid_size(); ++k)
    d = std::max(d, std::abs(r1.support(k) - r2.support(k)));
  return d;
}

bool contains(const ConvexRegion& r, cplx z, double margin) {
  for (int k = 0; k < r.grid_size(); ++k) {
    const double reach = (std::conj(unit(r.angle(k))) * z).real();
    if (reach > r.support(k) - margin) return false;
  }
  return true;
}

double outside_distance(const ConvexRegion& r, cplx z) {
  double d = 0.0;
  for (int k = 0; k < r.grid_size(); ++k) {
    const double reach = (std::conj(unit(r.angle(k))) * z).real();
    d = std::max(d, reach - r.support(k));
  }
  return d;
}

ConvexRegion inflate(const ConvexRegion& r, double margin) {
  require(margin >= 0.0, ErrorKind::BadInput, "inflate margin must be >= 0");
  const int m = r.grid_size();
  std::vector<double> h(m);
  std::vector<cplx> w(m);
  for (int k = 0; k < m; ++k) {
    h[k] = r.support(k) + margin;
    w[k] = r.witness(k) + margin * unit(r.angle(k));
  }
  return ConvexRegion::from_support(std::move(h), std::move(w));
}

double verify_hull_identity(const ComplexMatrix& a, const ComplexMatrix& b,
                            int m) {
  const ConvexRegion lhs = numrange_boundary(direct_sum(a, b), m);
  const ConvexRegion rhs =
      hull_of_union(numrange_boundary(a, m), numrange_boundary(b, m));
  return hausdorff(lhs, rhs);
}

}  // namespace specbench
