#include "specbench/rational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "specbench/rng.hpp"

namespace specbench {

namespace {

constexpr int kDegreeCap = 32;
constexpr double kPoleMarginRel = 1e-6;
constexpr double kNearPoleDist = 1e-9;

void check_coeffs(const std::vector<cplx>& c, const char* who) {
  for (cplx v : c)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            ErrorKind::BadInput,
            std::string(who) + ": non-finite coefficient");
}

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
  cplx acc(0.0);
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

double pole_margin(const ConvexRegion& w) {
  return kPoleMarginRel * std::max(1.0, w.circumradius());
}

void check_poles_clear(const RationalFunction& u, const ConvexRegion& w) {
  const double margin = pole_margin(w);
  for (const PoleTerm& p : u.poles())
    require(outside_distance(w, p.location) >= margin,
            ErrorKind::PoleOnSpectrum,
            "pole inside or hugging the numerical range");
}

}  // namespace

// Callers in search loops reuse one W(T) region across thousands of
// candidate evaluations; the public entry point computes it afresh.
ComplexMatrix rat_eval_matrix_with(const RationalFunction& u,
                                   const ComplexMatrix& t,
                                   const ConvexRegion* w_hint) {
  ComplexMatrix out = poly_eval_matrix(u.numerator(), t);
  if (u.is_polynomial()) return out;

  std::optional<ConvexRegion> computed;
  if (w_hint == nullptr) computed.emplace(numrange_boundary(t, 256));
  check_poles_clear(u, w_hint ? *w_hint : *computed);

  // u(T) = p(T) prod (T - pole I)^{-mult}; every factor is rational in T, so
  // left-solving instead of right-multiplying changes nothing.
  for (const PoleTerm& p : u.poles()) {
    ComplexMatrix shifted = t;
    for (int i = 0; i < t.dim(); ++i) shifted.at(i, i) -= p.location;
    const LuFactors lu = LuFactors::factor(shifted);
    for (int k = 0; k < p.multiplicity; ++k) out = lu.solve(out);
  }
  return out;
}

namespace {

// Golden-section maximum over [a, b]; returns the best value actually
// evaluated, so the result never drops below a seen sample.
template <typename F>
double golden_max(const F& f, double a, double b) {
  const double inv = 0.6180339887498949;
  double x1 = b - inv * (b - a);
  double x2 = a + inv * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  double seen = std::max(f1, f2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv * (b - a);
      f1 = f(x1);
    }
    seen = std::max(seen, std::max(f1, f2));
  }
  return seen;
}

double spectral_ratio_with(const RationalFunction& u, const ComplexMatrix& t,
                           const RegionSampler& s, const ConvexRegion* w) {
  const double sup = sup_norm(u, s);
  require(sup >= 1e-12, ErrorKind::ZeroFunction,
          "function vanishes on the boundary sampler");
  return spectral_norm(rat_eval_matrix_with(u, t, w)) / sup;
}

}  // namespace

RationalFunction::RationalFunction(std::vector<cplx> numerator,
                                   std::vector<PoleTerm> poles)
    : num_(std::move(numerator)), poles_(std::move(poles)) {
  check_coeffs(num_, "RationalFunction");
  require(numerator_degree() <= kDegreeCap, ErrorKind::BadInput,
          "numerator degree above 32");
  int total = 0;
  for (const PoleTerm& p : poles_) {
    require(std::isfinite(p.location.real()) && std::isfinite(p.location.imag()),
            ErrorKind::BadInput, "non-finite pole");
    require(p.multiplicity >= 1, ErrorKind::BadInput,
            "pole multiplicity must be positive");
    total += p.multiplicity;
  }
  require(total <= kDegreeCap, ErrorKind::BadInput,
          "total pole multiplicity above 32");
}

int RationalFunction::total_pole_multiplicity() const {
  int total = 0;
  for (const PoleTerm& p : poles_) total += p.multiplicity;
  return total;
}

RationalFunction scale_function(cplx c, const RationalFunction& u) {
  std::vector<cplx> num = u.numerator();
  for (cplx& v : num) v *= c;
  return RationalFunction(num, u.poles());
}

RationalFunction multiply(const RationalFunction& u,
                          const RationalFunction& v) {
  std::vector<cplx> num;
  if (!u.numerator().empty() && !v.numerator().empty()) {
    num.assign(u.numerator().size() + v.numerator().size() - 1, cplx(0.0));
    for (size_t i = 0; i < u.numerator().size(); ++i)
      for (size_t j = 0; j < v.numerator().size(); ++j)
        num[i + j] += u.numerator()[i] * v.numerator()[j];
  }
  std::vector<PoleTerm> poles = u.poles();
  for (const PoleTerm& p : v.poles()) {
    bool merged = false;
    for (PoleTerm& q : poles) {
      if (q.location == p.location) {
        q.multiplicity += p.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) poles.push_back(p);
  }
  return RationalFunction(std::move(num), std::move(poles));
}

RegionSampler::RegionSampler(ConvexRegion region,
                             std::vector<SamplerComponent> components)
    : region_(std::move(region)), components_(std::move(components)) {
  require(!components_.empty(), ErrorKind::BadInput, "sampler has no curves");
  const double slack = 1e-9 * region_.scale();
  for (const SamplerComponent& comp : components_) {
    require(!comp.points.empty() && comp.points.size() == comp.params.size(),
            ErrorKind::BadInput, "sampler component shape mismatch");
    for (size_t i = 0; i + 1 < comp.params.size(); ++i)
      require(comp.params[i] < comp.params[i + 1], ErrorKind::BadInput,
              "sampler params must increase");
    for (cplx z : comp.points)
      require(contains(region_, z, -slack), ErrorKind::Validation,
              "sample point escapes the region");
  }
  require(total_samples() >= 128, ErrorKind::BadInput,
          "need at least 128 boundary samples");
}

int RegionSampler::total_samples() const {
  int n = 0;
  for (const SamplerComponent& comp : components_)
    n += static_cast<int>(comp.points.size());
  return n;
}

RegionSampler disc_sampler(cplx center, double radius, int samples,
                           int grid) {
  require(radius > 0.0, ErrorKind::BadInput, "disc radius must be positive");
  SamplerComponent comp;
  comp.curve = [center, radius](double t) {
    return center + radius * cplx(std::cos(t), std::sin(t));
  };
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    comp.params.push_back(t);
    comp.points.push_back(comp.curve(t));
  }
  return RegionSampler(disc_region(center, radius, grid), {comp});
}

RegionSampler ellipse_sampler(cplx center, double a, double b, int samples,
                              int grid) {
  require(a > 0.0 && b > 0.0, ErrorKind::BadInput,
          "ellipse semi-axes must be positive");
  SamplerComponent comp;
  comp.curve = [center, a, b](double t) {
    return center + cplx(a * std::cos(t), b * std::sin(t));
  };
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    comp.params.push_back(t);
    comp.points.push_back(comp.curve(t));
  }
  return RegionSampler(ellipse_region(center, a, b, grid), {comp});
}

RegionSampler region_sampler(const ConvexRegion& region, int samples) {
  // Witnesses trace the boundary once as the direction sweeps; walking their
  // polygon arclength-uniformly spreads samples evenly even when many
  // directions share one witness (polytopal regions).
  const double tol = 1e-12 * region.scale();
  std::vector<cplx> v;
  for (int k = 0; k < region.grid_size(); ++k) {
    const cplx w = region.witness(k);
    if (v.empty() || std::abs(w - v.back()) > tol) v.push_back(w);
  }
  if (v.size() > 1 && std::abs(v.front() - v.back()) <= tol) v.pop_back();

  SamplerComponent comp;
  if (v.size() == 1) {
    // Degenerate (point) region.
    comp.curve = [p = v[0]](double) { return p; };
  } else {
    const size_t n = v.size();
    std::vector<double> cum(n + 1, 0.0);
    for (size_t k = 0; k < n; ++k)
      cum[k + 1] = cum[k] + std::abs(v[(k + 1) % n] - v[k]);
    const double total = cum[n];
    comp.curve = [v, cum, total](double t) {
      double frac = t / (2.0 * kPi);
      frac -= std::floor(frac);
      const double s = frac * total;
      const auto it = std::upper_bound(cum.begin(), cum.end(), s);
      size_t j = static_cast<size_t>(it - cum.begin());
      j = (j == 0) ? 0 : j - 1;
      if (j >= v.size()) j = v.size() - 1;
      const double seg = cum[j + 1] - cum[j];
      const double lam = seg > 0.0 ? (s - cum[j]) / seg : 0.0;
      return v[j] + lam * (v[(j + 1) % v.size()] - v[j]);
    };
  }
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    comp.params.push_back(t);
    comp.points.push_back(comp.curve(t));
  }
  return RegionSampler(region, {comp});
}

cplx rat_eval(const RationalFunction& u, cplx z) {
  cplx den(1.0);
  for (const PoleTerm& p : u.poles()) {
    const cplx d = z - p.location;
    require(std::abs(d) >= kNearPoleDist, ErrorKind::NearPole,
            "evaluation point within 1e-9 of a pole");
    for (int k = 0; k < p.multiplicity; ++k) den *= d;
  }
  return poly_eval(u.numerator(), z) / den;
}

ComplexMatrix rat_eval_matrix(const RationalFunction& u,
                              const ComplexMatrix& t) {
  return rat_eval_matrix_with(u, t, nullptr);
}

double sup_norm(const RationalFunction& u, const RegionSampler& s) {
  double best = 0.0;
  for (const SamplerComponent& comp : s.components()) {
    const int n = static_cast<int>(comp.points.size());
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
      f[i] = std::abs(rat_eval(u, comp.points[i]));
      best = std::max(best, f[i]);
    }
    if (n < 3 || !comp.curve) continue;

    std::vector<int> peaks;
    for (int i = 0; i < n; ++i)
      if (f[i] >= f[(i + n - 1) % n] && f[i] >= f[(i + 1) % n])
        peaks.push_back(i);
    if (peaks.size() > 64) {
      std::sort(peaks.begin(), peaks.end(),
                [&f](int a, int b) { return f[a] > f[b]; });
      peaks.resize(64);
    }
    for (int i : peaks) {
      double lo = comp.params[(i + n - 1) % n];
      double hi = comp.params[(i + 1) % n];
      if (i == 0) lo -= 2.0 * kPi;
      if (i == n - 1) hi += 2.0 * kPi;
      best = std::max(
          best, golden_max(
                    [&](double tt) {
                      return std::abs(rat_eval(u, comp.curve(tt)));
                    },
                    lo, hi));
    }
  }
  return best;
}

double spectral_ratio(const RationalFunction& u, const ComplexMatrix& t,
                      const RegionSampler& s) {
  return spectral_ratio_with(u, t, s, nullptr);
}

KEstimate estimate_K(const ComplexMatrix& t, const RegionSampler& s,
                     const KSearchConfig& cfg) {
  require(!cfg.degrees.empty(), ErrorKind::BadInput, "empty degree schedule");
  for (int d : cfg.degrees)
    require(d >= 1 && d <= kDegreeCap, ErrorKind::BadInput,
            "degree schedule entry out of range");
  require(cfg.restarts >= 0 && cfg.steps >= 0, ErrorKind::BadInput,
          "negative search budget");

  const ConvexRegion w = numrange_boundary(t, 256);
  const ConvexRegion& x = s.region();
  const double slack = 1e-12 * x.scale();
  for (int k = 0; k < w.grid_size(); ++k)
    require(contains(x, w.witness(k), -slack), ErrorKind::RegionViolation,
            "numerical range escapes the region");

  const double margin = pole_margin(w);
  for (cplx p : cfg.extra_poles)
    require(outside_distance(w, p) >= margin, ErrorKind::PoleOnSpectrum,
            "requested pole inside the numerical range");

  cplx centroid(0.0);
  for (int k = 0; k < x.grid_size(); ++k) centroid += x.witness(k);
  centroid /= static_cast<double>(x.grid_size());
  const double ring_r = 1.5 * x.circumradius();
  const bool ring_ok = ring_r > 1e-9 * x.scale();

  double best = -1.0;
  RationalFunction best_u = RationalFunction::one();
  int flags = 0;

  // Returns -1 for degenerate candidates (vanishing on the sampler, or a
  // refinement probe that strays next to a pole); setup errors still throw.
  auto consider = [&](const RationalFunction& u) -> double {
    double r;
    try {
      r = spectral_ratio_with(u, t, s, &w);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroFunction ||
          e.kind() == ErrorKind::NearPole)
        return -1.0;
      throw;
    }
    if (r > kRatioFlagThreshold) ++flags;
    if (r > best) {
      best = r;
      best_u = u;
    }
    return r;
  };

  consider(RationalFunction::one());
  consider(RationalFunction::coordinate());

  CounterRng root(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) {
    CounterRng rng = root.split(static_cast<uint64_t>(r) + 2);
    const int deg = cfg.degrees[static_cast<size_t>(r) % cfg.degrees.size()];

    std::vector<PoleTerm> poles;
    const int ring_count = ring_ok ? (r % 3) : 0;
    for (int j = 0; j < ring_count; ++j) {
      const double ang = 2.0 * kPi * rng.next_double();
      poles.push_back({centroid + ring_r * cplx(std::cos(ang), std::sin(ang)),
                       1});
    }
    for (cplx p : cfg.extra_poles) poles.push_back({p, 1});

    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (cplx& v : c) v = rng.next_complex_gaussian();
    double cur = consider(RationalFunction(c, poles));
    if (cur < 0.0) continue;

    double cmax = 0.0;
    for (cplx v : c) cmax = std::max(cmax, std::abs(v));
    double h = 0.5 * (1.0 + cmax);
    const int n_coord = 2 * (deg + 1);
    for (int step = 0; step < cfg.steps && h > 1e-12 * (1.0 + cmax); ++step) {
      const size_t slot = static_cast<size_t>((step % n_coord) / 2);
      const bool imag_part = (step % n_coord) % 2 == 1;
      bool improved = false;
      for (double sgn : {1.0, -1.0}) {
        std::vector<cplx> c2 = c;
        c2[slot] += imag_part ? cplx(0.0, sgn * h) : cplx(sgn * h, 0.0);
        const double r2 = consider(RationalFunction(c2, poles));
        if (r2 > cur + 1e-15) {
          cur = r2;
          c = c2;
          improved = true;
          break;
        }
      }
      if (!improved) h *= 0.5;
    }
  }

  // Re-certify through the public path (it recomputes W(T); the arithmetic
  // after validation is identical, so the certificate attains k_hat exactly).
  const double official = spectral_ratio(best_u, t, s);
  return {official, best_u, flags};
}

double von_neumann_check(const ComplexMatrix& t, int trials, uint64_t seed) {
  require(trials >= 1, ErrorKind::BadInput, "need at least one trial");
  require(spectral_norm(t) <= 1.0 + 1e-12, ErrorKind::NotContraction,
          "operator norm above 1");

  const RegionSampler disc = disc_sampler(cplx(0.0), 1.0, 512);
  CounterRng root(seed);
  double worst = 0.0;
  for (int r = 0; r < trials; ++r) {
    CounterRng rng = root.split(static_cast<uint64_t>(r));
    const int deg = 1 + rng.next_below(12);
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (cplx& v : c) v = rng.next_complex_gaussian();
    double ratio;
    try {
      ratio = spectral_ratio(RationalFunction(c), t, disc);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroFunction) continue;
      throw;
    }
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace specbench
