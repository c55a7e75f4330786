#include "specbench/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specbench/rng.hpp"

namespace specbench {

namespace {

constexpr double kResolventCap = 1e6;
constexpr double kSystemTol = 1e-8;    // idempotent-system contracts
constexpr double kOrthogonalTol = 1e-9;

void check_contour(const Contour& c) {
  require(c.nodes >= 64, ErrorKind::BadInput,
          "contour needs at least 64 nodes");
  require(std::isfinite(c.radius) && c.radius > 0.0, ErrorKind::BadInput,
          "contour radius must be positive");
  require(std::isfinite(c.center.real()) && std::isfinite(c.center.imag()),
          ErrorKind::BadInput, "contour center must be finite");
}

double comm_residual(const ComplexMatrix& q, const ComplexMatrix& t) {
  return (q * t - t * q).frobenius();
}

}  // namespace

ComplexMatrix riesz_projection(const ComplexMatrix& t, const Contour& c) {
  t.check_finite("riesz_projection");
  check_contour(c);
  ComplexMatrix q(t.dim());
  for (int j = 0; j < c.nodes; ++j) {
    const double th = 2.0 * kPi * j / c.nodes;
    const cplx unit = std::exp(cplx(0.0, th));
    ComplexMatrix r(t.dim());
    try {
      r = resolvent(t, c.center + c.radius * unit);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Singular)
        fail(ErrorKind::ContourThroughSpectrum,
             "contour node hits the spectrum");
      throw;
    }
    require(r.frobenius() <= kResolventCap, ErrorKind::ContourThroughSpectrum,
            "resolvent too large on the contour");
    // (2 pi i)^{-1} * gamma'(t) * (2 pi / M) collapses to r e^{it} / M.
    q += (cplx(c.radius / c.nodes) * unit) * r;
  }
  return q;
}

int contour_eig_count(const ComplexMatrix& t, const Contour& c) {
  const cplx tr = riesz_projection(t, c).trace();
  const double count = std::round(tr.real());
  require(std::abs(tr - cplx(count)) <= 0.2, ErrorKind::Validation,
          "projection trace is not close to an integer");
  return static_cast<int>(count);
}

std::vector<Contour> auto_contours(const std::vector<cplx>& spectrum,
                                   double norm_scale, int nodes) {
  require(!spectrum.empty(), ErrorKind::BadInput, "empty spectrum");
  require(std::isfinite(norm_scale) && norm_scale > 0.0, ErrorKind::BadInput,
          "norm scale must be positive");
  const int n = static_cast<int>(spectrum.size());
  const double link = 0.1 * norm_scale;

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(spectrum[i] - spectrum[j]) < link)
        parent[root(i)] = root(j);

  // Clusters in order of first appearance, for determinism.
  std::vector<std::vector<int>> clusters;
  std::vector<int> where(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = root(i);
    if (where[r] < 0) {
      where[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[where[r]].push_back(i);
  }
  require(clusters.size() >= 2, ErrorKind::ContourThroughSpectrum,
          "no spectral gap of at least 0.1 * scale");

  std::vector<Contour> out;
  out.reserve(clusters.size());
  for (const std::vector<int>& cl : clusters) {
    cplx centroid(0.0);
    for (int i : cl) centroid += spectrum[i];
    centroid /= static_cast<double>(cl.size());
    double spread = 0.0;
    for (int i : cl) spread = std::max(spread, std::abs(spectrum[i] - centroid));
    double gap = std::numeric_limits<double>::infinity();
    for (int i : cl)
      for (int j = 0; j < n; ++j)
        if (where[root(j)] != where[root(i)])
          gap = std::min(gap, std::abs(spectrum[i] - spectrum[j]));
    out.push_back(Contour{centroid, spread + 0.5 * gap, nodes});
  }
  return out;
}

IdempotentSystem idempotent_system(const ComplexMatrix& t,
                                   const std::vector<Contour>& contours) {
  require(!contours.empty(), ErrorKind::BadInput, "no contours given");
  for (size_t i = 0; i < contours.size(); ++i)
    for (size_t j = i + 1; j < contours.size(); ++j) {
      const double d = std::abs(contours[i].center - contours[j].center);
      require(d >= contours[i].radius + contours[j].radius,
              ErrorKind::OverlapError, "contour discs overlap");
    }

  IdempotentSystem sys;
  sys.parts.reserve(contours.size());
  for (const Contour& c : contours) sys.parts.push_back(riesz_projection(t, c));
  sys.remainder = ComplexMatrix::identity(t.dim());
  for (const ComplexMatrix& q : sys.parts) sys.remainder -= q;

  std::vector<const ComplexMatrix*> all;
  for (const ComplexMatrix& q : sys.parts) all.push_back(&q);
  all.push_back(&sys.remainder);

  const double tnorm = std::max(t.frobenius(), 1e-300);
  for (size_t a = 0; a < all.size(); ++a) {
    const ComplexMatrix& q = *all[a];
    sys.idempotent_residual =
        std::max(sys.idempotent_residual, (q * q - q).frobenius());
    sys.commutation_residual =
        std::max(sys.commutation_residual, comm_residual(q, t) / tnorm);
    for (size_t b = 0; b < all.size(); ++b)
      if (a != b)
        sys.cross_residual =
            std::max(sys.cross_residual, (*all[a] * *all[b]).frobenius());
  }
  require(sys.idempotent_residual <= kSystemTol, ErrorKind::Validation,
          "projections fail the idempotency contract");
  require(sys.cross_residual <= kSystemTol, ErrorKind::Validation,
          "projections fail the disjointness contract");
  require(sys.commutation_residual <= kSystemTol, ErrorKind::Validation,
          "projections fail to commute with the operator");
  return sys;
}

OrthogonalizedSystem orthogonalize(const IdempotentSystem& sys) {
  const int n = sys.remainder.dim();
  ComplexMatrix h(n);
  for (const ComplexMatrix& q : sys.parts) h += q.adjoint() * q;
  h += sys.remainder.adjoint() * sys.remainder;

  OrthogonalizedSystem o;
  o.similarity = matrix_sqrt_hpd(h);
  o.inverse = solve(o.similarity, ComplexMatrix::identity(n));
  for (const ComplexMatrix& q : sys.parts)
    o.projections.push_back(o.similarity * q * o.inverse);
  o.remainder_projection = o.similarity * sys.remainder * o.inverse;
  o.condition = spectral_norm(o.similarity) * spectral_norm(o.inverse);

  std::vector<const ComplexMatrix*> all;
  for (const ComplexMatrix& p : o.projections) all.push_back(&p);
  all.push_back(&o.remainder_projection);
  ComplexMatrix total(n);
  for (const ComplexMatrix* p : all) {
    require((*p - p->adjoint()).frobenius() <= kOrthogonalTol,
            ErrorKind::Validation, "orthogonalized projection not self-adjoint");
    require((*p * *p - *p).frobenius() <= kOrthogonalTol, ErrorKind::Validation,
            "orthogonalized projection not idempotent");
    total += *p;
  }
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t b = a + 1; b < all.size(); ++b)
      require((*all[a] * *all[b]).frobenius() <= kOrthogonalTol,
              ErrorKind::Validation, "orthogonalized projections not disjoint");
  require((total - ComplexMatrix::identity(n)).frobenius() <= kOrthogonalTol,
          ErrorKind::Validation, "orthogonalized projections do not sum to I");
  return o;
}

namespace {

std::vector<cplx> column_of(const ComplexMatrix& m, int j) {
  std::vector<cplx> v(m.dim());
  for (int i = 0; i < m.dim(); ++i) v[i] = m.at(i, j);
  return v;
}

// Orthonormal basis of range(P) by pivoted modified Gram-Schmidt over P's
// columns; pivot by column norm descending, ties by index.
RangeBasis range_basis(const ComplexMatrix& p, int rank) {
  const int n = p.dim();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) norms[j] = vec_norm(column_of(p, j));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return norms[a] > norms[b]; });

  RangeBasis basis;
  for (int j : order) {
    if (static_cast<int>(basis.size()) == rank) break;
    std::vector<cplx> w = column_of(p, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const std::vector<cplx>& b : basis) {
        const cplx coeff = inner(w, b);
        for (int i = 0; i < n; ++i) w[i] -= coeff * b[i];
      }
    const double len = vec_norm(w);
    if (len <= 1e-8) continue;
    for (cplx& x : w) x /= len;
    basis.push_back(std::move(w));
  }
  require(static_cast<int>(basis.size()) == rank, ErrorKind::Validation,
          "projection range basis is rank deficient");
  return basis;
}

ComplexMatrix compress(const ComplexMatrix& t, const RangeBasis& basis) {
  const int r = static_cast<int>(basis.size());
  ComplexMatrix out(r);
  for (int b = 0; b < r; ++b) {
    const std::vector<cplx> tb = mat_vec(t, basis[b]);
    for (int a = 0; a < r; ++a) out.at(a, b) = inner(tb, basis[a]);
  }
  return out;
}

}  // namespace

ComplexMatrix embed_blocks(const std::vector<ComplexMatrix>& blocks,
                           const std::vector<RangeBasis>& bases, int dim) {
  require(blocks.size() == bases.size(), ErrorKind::BadInput,
          "blocks and bases must pair up");
  ComplexMatrix out(dim);
  for (size_t k = 0; k < blocks.size(); ++k) {
    const RangeBasis& b = bases[k];
    const int r = static_cast<int>(b.size());
    require(blocks[k].dim() == r, ErrorKind::BadDimension,
            "block does not match its basis");
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c) {
        const cplx coeff = blocks[k].at(a, c);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            out.at(i, j) += b[a][i] * coeff * std::conj(b[c][j]);
      }
  }
  return out;
}

BlockDecomposition decompose_operator(const ComplexMatrix& t,
                                      const OrthogonalizedSystem& osys) {
  require(t.dim() == osys.similarity.dim(), ErrorKind::BadDimension,
          "operator and system dimensions differ");
  const ComplexMatrix tp = osys.similarity * t * osys.inverse;

  std::vector<const ComplexMatrix*> all;
  for (const ComplexMatrix& p : osys.projections) all.push_back(&p);
  all.push_back(&osys.remainder_projection);

  BlockDecomposition d;
  for (const ComplexMatrix* p : all) {
    const cplx tr = p->trace();
    const double rank = std::round(tr.real());
    require(std::abs(tr - cplx(rank)) <= 1e-6, ErrorKind::Validation,
            "projection trace is not close to an integer");
    if (rank < 0.5) continue;  // nothing to extract
    const RangeBasis basis = range_basis(*p, static_cast<int>(rank));
    d.blocks.push_back(compress(tp, basis));
    d.bases.push_back(basis);
  }
  d.off_block_residual =
      (tp - embed_blocks(d.blocks, d.bases, t.dim())).frobenius();
  return d;
}

double verify_block_ranges(const std::vector<ComplexMatrix>& blocks, int m) {
  require(!blocks.empty(), ErrorKind::BadInput, "no blocks");
  ComplexMatrix whole = blocks[0];
  ConvexRegion hull = numrange_boundary(blocks[0], m);
  for (size_t k = 1; k < blocks.size(); ++k) {
    whole = direct_sum(whole, blocks[k]);
    hull = hull_of_union(hull, numrange_boundary(blocks[k], m));
  }
  return hausdorff(numrange_boundary(whole, m), hull);
}

namespace {

struct TriangularShape {
  int dim = 0;

  // Parameter layout: dim-1 log diagonal entries (the top-left entry is
  // gauge-fixed to 1), then re/im pairs for the strict upper triangle.
  int count() const { return (dim - 1) + dim * (dim - 1); }

  ComplexMatrix build(const std::vector<double>& x) const {
    ComplexMatrix s(dim);
    s.at(0, 0) = 1.0;
    for (int i = 1; i < dim; ++i) s.at(i, i) = std::exp(x[i - 1]);
    int k = dim - 1;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j, k += 2)
        s.at(i, j) = cplx(x[k], x[k + 1]);
    return s;
  }
};

std::vector<RationalFunction> trial_battery(const ConvexRegion& x) {
  cplx centroid(0.0);
  for (const cplx& w : x.witness()) centroid += w;
  centroid /= static_cast<double>(x.grid_size());
  const double ring =
      1.5 * std::max(x.circumradius(), 1e-3 * x.scale());
  const auto pole = [&](int k) {
    return centroid + ring * std::exp(cplx(0.0, 2.0 * kPi * k / 3.0));
  };
  std::vector<RationalFunction> battery;
  battery.emplace_back(std::vector<cplx>{cplx(1.0)});
  battery.emplace_back(std::vector<cplx>{cplx(0.0), cplx(1.0)});
  battery.emplace_back(std::vector<cplx>{cplx(0.0), cplx(0.0), cplx(1.0)});
  battery.emplace_back(
      std::vector<cplx>{cplx(0.0), cplx(0.0), cplx(0.0), cplx(1.0)});
  battery.emplace_back(std::vector<cplx>{cplx(1.0)},
                       std::vector<PoleTerm>{{pole(0), 1}});
  battery.emplace_back(std::vector<cplx>{cplx(0.0), cplx(1.0)},
                       std::vector<PoleTerm>{{pole(1), 1}});
  battery.emplace_back(std::vector<cplx>{cplx(1.0)},
                       std::vector<PoleTerm>{{pole(2), 2}});
  return battery;
}

}  // namespace

SimilarityResult contractive_similarity_search(
    const ComplexMatrix& t_block, const RegionSampler& s,
    const SimilaritySearchConfig& cfg) {
  t_block.check_finite("contractive_similarity_search");
  require(cfg.restarts >= 1 && cfg.steps >= 0, ErrorKind::BadInput,
          "search needs at least one restart");
  const ConvexRegion& x = s.region();
  const ConvexRegion w = numrange_boundary(t_block, 256);
  for (int k = 0; k < w.grid_size(); ++k)
    require(contains(x, w.witness(k), -1e-12 * x.scale()),
            ErrorKind::RegionViolation,
            "block numerical range leaves the region");

  const std::vector<RationalFunction> battery = trial_battery(x);
  std::vector<double> sup(battery.size());
  for (size_t k = 0; k < battery.size(); ++k) {
    sup[k] = sup_norm(battery[k], s);
    require(sup[k] >= 1e-12, ErrorKind::ZeroFunction,
            "trial function vanishes on the boundary");
  }

  // Pole clearance below is certified against W(t_block): the spectrum is
  // similarity invariant, so the original range stays a valid enclosure for
  // every candidate S^{-1} T S.
  const auto objective = [&](const ComplexMatrix& sim) {
    try {
      const ComplexMatrix tp = solve(sim, t_block * sim);
      double worst = 0.0;
      for (size_t k = 0; k < battery.size(); ++k)
        worst = std::max(
            worst,
            spectral_norm(rat_eval_matrix_with(battery[k], tp, &w)) / sup[k]);
      return worst;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const TriangularShape shape{t_block.dim()};
  const int nparams = shape.count();
  CounterRng root(cfg.seed);

  std::vector<double> best_x(nparams, 0.0);
  double best = objective(shape.build(best_x));  // restart 0 is S = I

  for (int r = 1; nparams > 0 && r < cfg.restarts; ++r) {
    CounterRng rng = root.split(static_cast<uint64_t>(r));
    std::vector<double> x(nparams);
    for (int i = 0; i < shape.dim - 1; ++i)
      x[i] = 1.1 * (2.0 * rng.next_double() - 1.0);
    for (int i = shape.dim - 1; i < nparams; ++i)
      x[i] = 0.5 * rng.next_gaussian();
    double val = objective(shape.build(x));

    double h = 0.5;
    for (int step = 0; step < cfg.steps && h > 1e-12; ++step) {
      const int slot = step % nparams;
      bool moved = false;
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> y = x;
        y[slot] += dir * h;
        const double v = objective(shape.build(y));
        if (v < val - 1e-15) {
          x = std::move(y);
          val = v;
          moved = true;
          break;
        }
      }
      if (!moved && slot == nparams - 1) h *= 0.5;
    }
    if (val < best) {
      best = val;
      best_x = x;
    }
  }

  // Polish the incumbent (covers the common case where S = I starts best).
  double h = 0.25;
  for (int step = 0; step < cfg.steps && h > 1e-12; ++step) {
    const int slot = step % nparams;
    bool moved = false;
    for (double dir : {+1.0, -1.0}) {
      std::vector<double> y = best_x;
      y[slot] += dir * h;
      const double v = objective(shape.build(y));
      if (v < best - 1e-15) {
        best_x = std::move(y);
        best = v;
        moved = true;
        break;
      }
    }
    if (!moved && slot == nparams - 1) h *= 0.5;
  }

  SimilarityResult result;
  result.similarity = shape.build(best_x);
  const ComplexMatrix tp = solve(result.similarity, t_block * result.similarity);
  result.achieved = 0.0;
  for (size_t k = 0; k < battery.size(); ++k)
    result.achieved = std::max(
        result.achieved,
        spectral_norm(rat_eval_matrix_with(battery[k], tp, &w)) /
            sup_norm(battery[k], s));
  return result;
}

int ComponentGrid::total_nodes() const {
  int n = 0;
  for (const BoundaryGrid& g : components) n += g.M;
  return n;
}

std::vector<cplx> ComponentGrid::all_nodes() const {
  std::vector<cplx> out;
  out.reserve(total_nodes());
  for (const BoundaryGrid& g : components)
    out.insert(out.end(), g.nodes.begin(), g.nodes.end());
  return out;
}

ComponentGrid component_grid(std::vector<BoundaryGrid> parts) {
  require(!parts.empty(), ErrorKind::BadInput, "no boundary components");
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j) {
      const ConvexRegion& a = parts[i].region;
      const ConvexRegion& b = parts[j].region;
      require(a.grid_size() == b.grid_size(), ErrorKind::GridMismatch,
              "component regions use different angle grids");
      const int m = a.grid_size();
      bool separated = false;
      for (int k = 0; k < m && !separated; ++k)
        separated = a.support(k) + b.support((k + m / 2) % m) < 0.0;
      require(separated, ErrorKind::OverlapError,
              "boundary components are not disjoint");
    }
  return ComponentGrid{std::move(parts)};
}

MeasureProjection whole_components(const ComponentGrid& grid,
                                   std::vector<int> mask) {
  std::sort(mask.begin(), mask.end());
  mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
  const int count = static_cast<int>(grid.components.size());
  for (int c : mask)
    require(c >= 0 && c < count, ErrorKind::BadInput,
            "mask component out of range");
  MeasureProjection q;
  q.mask = std::move(mask);
  for (const BoundaryGrid& g : grid.components) q.sizes.push_back(g.M);
  return q;
}

MeasureProjection complement_projection(const MeasureProjection& q) {
  MeasureProjection out;
  out.sizes = q.sizes;
  for (int c = 0; c < static_cast<int>(q.sizes.size()); ++c)
    if (!std::binary_search(q.mask.begin(), q.mask.end(), c))
      out.mask.push_back(c);
  return out;
}

MeasureProjection intersect_projections(const MeasureProjection& a,
                                        const MeasureProjection& b) {
  require(a.sizes == b.sizes, ErrorKind::GridMismatch,
          "projections live on different grids");
  MeasureProjection out;
  out.sizes = a.sizes;
  std::set_intersection(a.mask.begin(), a.mask.end(), b.mask.begin(),
                        b.mask.end(), std::back_inserter(out.mask));
  return out;
}

MeasureVector measure_projection_apply(const MeasureProjection& q,
                                       const MeasureVector& mu) {
  int total = 0;
  for (int s : q.sizes) total += s;
  require(static_cast<int>(mu.values.size()) == total, ErrorKind::GridMismatch,
          "measure length does not match the grid");
  MeasureVector out = mu;
  int offset = 0;
  for (int c = 0; c < static_cast<int>(q.sizes.size()); ++c) {
    if (!std::binary_search(q.mask.begin(), q.mask.end(), c))
      std::fill(out.values.begin() + offset,
                out.values.begin() + offset + q.sizes[c], cplx(0.0));
    offset += q.sizes[c];
  }
  return out;
}

MeasureVector measure_multiply(const RationalFunction& u,
                               const ComponentGrid& grid,
                               const MeasureVector& mu) {
  require(static_cast<int>(mu.values.size()) == grid.total_nodes(),
          ErrorKind::GridMismatch, "measure length does not match the grid");
  MeasureVector out = mu;
  int k = 0;
  for (const BoundaryGrid& g : grid.components)
    for (int j = 0; j < g.M; ++j, ++k) out.values[k] *= rat_eval(u, g.nodes[j]);
  return out;
}

}  // namespace specbench
