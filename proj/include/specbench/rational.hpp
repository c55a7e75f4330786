#pragma once

#include <functional>
#include <vector>

#include "specbench/convex_region.hpp"

namespace specbench {

struct PoleTerm {
  cplx location;
  int multiplicity = 1;
};

// p(z) / prod_j (z - pole_j)^{mult_j}, numerator coefficients ascending.
// Caps: numerator degree <= 32, total pole multiplicity <= 32.  Whether the
// poles clear a working region is checked at the point of use, where the
// region is known.
class RationalFunction {
 public:
  explicit RationalFunction(std::vector<cplx> numerator,
                            std::vector<PoleTerm> poles = {});

  static RationalFunction one() { return RationalFunction({cplx(1.0)}); }
  // The coordinate function z.
  static RationalFunction coordinate() {
    return RationalFunction({cplx(0.0), cplx(1.0)});
  }

  const std::vector<cplx>& numerator() const { return num_; }
  const std::vector<PoleTerm>& poles() const { return poles_; }
  int numerator_degree() const { return static_cast<int>(num_.size()) - 1; }
  int total_pole_multiplicity() const;
  bool is_polynomial() const { return poles_.empty(); }

 private:
  std::vector<cplx> num_;
  std::vector<PoleTerm> poles_;
};

RationalFunction scale_function(cplx c, const RationalFunction& u);
// Product; poles at identical locations merge by adding multiplicities.
RationalFunction multiply(const RationalFunction& u,
                          const RationalFunction& v);

// One closed boundary curve: sample points plus the 2pi-periodic
// parametrization they came from, kept so the sup evaluation can refine
// between samples without leaving the curve.
struct SamplerComponent {
  std::vector<double> params;
  std::vector<cplx> points;
  std::function<cplx(double)> curve;
};

// Boundary samples of a region.  Sup norms are taken over these curves; the
// region handle serves the containment checks (pole margins, W(T) inclusion).
class RegionSampler {
 public:
  RegionSampler(ConvexRegion region, std::vector<SamplerComponent> components);

  const ConvexRegion& region() const { return region_; }
  const std::vector<SamplerComponent>& components() const {
    return components_;
  }
  int total_samples() const;

 private:
  ConvexRegion region_;
  std::vector<SamplerComponent> components_;
};

RegionSampler disc_sampler(cplx center, double radius, int samples = 512,
                           int grid = 720);
RegionSampler ellipse_sampler(cplx center, double a, double b,
                              int samples = 512, int grid = 720);
// Samples the witness polygon of an arbitrary region, arclength-uniform.
RegionSampler region_sampler(const ConvexRegion& region, int samples = 512);

// p(z) / prod (z - pole)^mult; z must clear every pole by 1e-9.
cplx rat_eval(const RationalFunction& u, cplx z);

// u(T) = p(T) * prod (T - pole I)^{-mult}; the factors commute.  Poles must
// clear W(T) (which encloses the spectrum) by the pole margin.
ComplexMatrix rat_eval_matrix(const RationalFunction& u,
                              const ComplexMatrix& t);

// Search-loop variant: validates poles against a caller-held region that
// encloses the spectrum instead of recomputing the numerical range per
// candidate.  Pass nullptr to recompute.
ComplexMatrix rat_eval_matrix_with(const RationalFunction& u,
                                   const ComplexMatrix& t,
                                   const ConvexRegion* w_hint);

// Max of |u| over the sampler's curves: sample max sharpened by golden-section
// refinement around each local maximum, staying on the curve.  A plain sample
// max undershoots the true sup quadratically in the spacing, which is far too
// loose for the 1e-8 contraction contracts; refinement keeps the lower-bound
// reading while converging to the curve sup.
double sup_norm(const RationalFunction& u, const RegionSampler& s);

// spectral_norm(u(T)) / sup_norm(u, s).
double spectral_ratio(const RationalFunction& u, const ComplexMatrix& t,
                      const RegionSampler& s);

struct KSearchConfig {
  std::vector<int> degrees = {2, 4, 8, 12};
  int restarts = 200;
  int steps = 500;
  uint64_t seed = 1;
  std::vector<cplx> extra_poles;
};

// Ratios above 1 + sqrt(2) on a convex region holding W(T) are logged as
// review events, never as errors.
inline constexpr double kRatioFlagThreshold = 2.414213562373095;

struct KEstimate {
  double k_hat;
  RationalFunction certificate;
  // Count of evaluated candidates whose ratio exceeded kRatioFlagThreshold.
  int flagged_ratios = 0;
};

// Seeded lower-bound search for the best constant K with
// ||u(T)|| <= K sup_X |u|: random coefficient draws over the degree schedule,
// poles on a ring at 1.5x the region circumradius plus any user-supplied
// locations, then coordinatewise refinement.  u = 1 and u = z are always in
// the candidate set, so k_hat >= 1 and the certificate attains k_hat through
// spectral_ratio exactly.
KEstimate estimate_K(const ComplexMatrix& t, const RegionSampler& s,
                     const KSearchConfig& cfg);

// Max spectral_ratio of seeded random polynomials (degree <= 12) against the
// unit-disc sampler.  Requires spectral_norm(T) <= 1 + 1e-12.
double von_neumann_check(const ComplexMatrix& t, int trials, uint64_t seed);

}  // namespace specbench
