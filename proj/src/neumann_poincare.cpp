#include "specbench/neumann_poincare.hpp"

#include <algorithm>
#include <cmath>

namespace specbench {

namespace {

void check_vec_dim(const std::vector<cplx>& v, int m, const char* who) {
  require(static_cast<int>(v.size()) == m, ErrorKind::BadInput,
          std::string(who) + ": vector length must match the grid");
}

void check_numrange_margin(const BoundaryGrid& grid, const ComplexMatrix& t) {
  const ConvexRegion w = numrange_boundary(t, 256);
  for (int k = 0; k < w.grid_size(); ++k)
    require(contains(grid.region, w.witness(k), grid.margin()),
            ErrorKind::RegionViolation,
            "numerical range too close to the boundary for this grid");
}

SemispectralDensity assemble_density(const BoundaryGrid& grid,
                                     const ComplexMatrix& t) {
  t.check_finite("semispectral_density");
  SemispectralDensity d{grid, {}};
  d.blocks.reserve(grid.M);
  for (int j = 0; j < grid.M; ++j) {
    const ComplexMatrix r = resolvent(t, grid.nodes[j]);
    const ComplexMatrix a = grid.normals[j] * r;
    // A + A* is Hermitian exactly, entry by entry.
    ComplexMatrix f = a + a.adjoint();
    f *= cplx(grid.weights[j] / (4.0 * kPi));
    d.blocks.push_back(std::move(f));
  }
  return d;
}

}  // namespace

namespace {

std::vector<double> build_np_kernel(const BoundaryGrid& grid) {
  const int m = grid.M;
  std::vector<double> k(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        // Smooth diagonal limit of the kernel.
        k[static_cast<size_t>(i) * m + i] =
            grid.curvatures[i] * grid.weights[i] / (2.0 * kPi);
        continue;
      }
      const cplx q = grid.normals[j] / (grid.nodes[j] - grid.nodes[i]);
      k[static_cast<size_t>(i) * m + j] = q.real() * grid.weights[j] / kPi;
    }
  }
  return k;
}

struct FactoredSystem {
  std::vector<double> lu;
  std::vector<int> pivots;
};

FactoredSystem factor_identity_plus(const std::vector<double>& k, int m) {
  FactoredSystem f;
  f.lu.resize(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      f.lu[static_cast<size_t>(i) * m + j] =
          k[static_cast<size_t>(i) * m + j] + (i == j ? 1.0 : 0.0);
  f.pivots.resize(m);
  for (int i = 0; i < m; ++i) f.pivots[i] = i;

  double biggest = 0.0;
  for (double v : f.lu) biggest = std::max(biggest, std::abs(v));
  const double tiny = 1e-13 * std::max(1.0, biggest);

  auto* a = f.lu.data();
  const auto row = [&](int i) { return a + static_cast<size_t>(i) * m; };
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int i = col + 1; i < m; ++i)
      if (std::abs(row(i)[col]) > std::abs(row(piv)[col])) piv = i;
    require(std::abs(row(piv)[col]) > tiny, ErrorKind::Singular,
            "I + K is numerically singular");
    if (piv != col) {
      std::swap_ranges(row(col), row(col) + m, row(piv));
      std::swap(f.pivots[col], f.pivots[piv]);
    }
    for (int i = col + 1; i < m; ++i) {
      const double l = row(i)[col] / row(col)[col];
      row(i)[col] = l;
      for (int j = col + 1; j < m; ++j) row(i)[j] -= l * row(col)[j];
    }
  }
  return f;
}

// (I+K) x = b with b and x real.
std::vector<double> lu_solve(const std::vector<double>& lu,
                             const std::vector<int>& pivots,
                             const std::vector<double>& b) {
  const int m = static_cast<int>(pivots.size());
  const auto row = [&](int i) { return lu.data() + static_cast<size_t>(i) * m; };
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = b[pivots[i]];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) x[i] -= row(i)[j] * x[j];
  for (int i = m - 1; i >= 0; --i) {
    for (int j = i + 1; j < m; ++j) x[i] -= row(i)[j] * x[j];
    x[i] /= row(i)[i];
  }
  return x;
}

// (I+K)^T x = b: U^T then L^T, then undo the row permutation.
std::vector<double> lu_solve_transpose(const std::vector<double>& lu,
                                       const std::vector<int>& pivots,
                                       const std::vector<double>& b) {
  const int m = static_cast<int>(pivots.size());
  const auto row = [&](int i) { return lu.data() + static_cast<size_t>(i) * m; };
  std::vector<double> y(m);
  for (int i = 0; i < m; ++i) {
    double v = b[i];
    for (int j = 0; j < i; ++j) v -= row(j)[i] * y[j];
    y[i] = v / row(i)[i];
  }
  for (int i = m - 1; i >= 0; --i)
    for (int j = i + 1; j < m; ++j) y[i] -= row(j)[i] * y[j];
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[pivots[i]] = y[i];
  return x;
}

// Complex data goes through the real solver componentwise, so a vector with
// zero imaginary part comes back with zero imaginary part, identically.
std::vector<cplx> solve_componentwise(
    const std::vector<double>& lu, const std::vector<int>& pivots,
    const std::vector<cplx>& b,
    std::vector<double> (*solver)(const std::vector<double>&,
                                  const std::vector<int>&,
                                  const std::vector<double>&)) {
  const int m = static_cast<int>(pivots.size());
  std::vector<double> re(m), im(m);
  for (int i = 0; i < m; ++i) {
    re[i] = b[i].real();
    im[i] = b[i].imag();
  }
  const std::vector<double> xre = solver(lu, pivots, re);
  const std::vector<double> xim = solver(lu, pivots, im);
  std::vector<cplx> x(m);
  for (int i = 0; i < m; ++i) x[i] = cplx(xre[i], xim[i]);
  return x;
}

}  // namespace

NPOperator::NPOperator(BoundaryGrid grid)
    : grid_(std::move(grid)), k_(build_np_kernel(grid_)) {
  FactoredSystem f = factor_identity_plus(k_, grid_.M);
  lu_ = std::move(f.lu);
  pivots_ = std::move(f.pivots);
}

double NPOperator::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < grid_.M; ++j) s += entry(i, j);
  return s;
}

std::vector<cplx> NPOperator::apply_s(const std::vector<cplx>& g) const {
  check_vec_dim(g, grid_.M, "apply_s");
  std::vector<cplx> phi = solve_componentwise(lu_, pivots_, g, lu_solve);
  for (cplx& v : phi) v *= 2.0;
  return phi;
}

std::vector<cplx> NPOperator::apply_s_transpose(
    const std::vector<cplx>& nu) const {
  check_vec_dim(nu, grid_.M, "apply_s_transpose");
  std::vector<cplx> mu =
      solve_componentwise(lu_, pivots_, nu, lu_solve_transpose);
  for (cplx& v : mu) v *= 2.0;
  return mu;
}

NPOperator np_matrix(const BoundaryGrid& grid) { return NPOperator(grid); }

std::vector<cplx> dirichlet_density(const NPOperator& np,
                                    const std::vector<cplx>& g) {
  return np.apply_s(g);
}

cplx double_layer_eval(const BoundaryGrid& grid, const std::vector<cplx>& phi,
                       cplx z) {
  check_vec_dim(phi, grid.M, "double_layer_eval");
  require(contains(grid.region, z, grid.margin()),
          ErrorKind::TooCloseToBoundary,
          "evaluation point outside or within 5 spacings of the boundary");
  cplx acc(0.0);
  for (int j = 0; j < grid.M; ++j) {
    const double kernel = (grid.normals[j] / (grid.nodes[j] - z)).real();
    acc += phi[j] * kernel * grid.weights[j];
  }
  return acc / (2.0 * kPi);
}

ComplexMatrix SemispectralDensity::total() const {
  ComplexMatrix sum(blocks.empty() ? 1 : blocks[0].dim());
  for (const ComplexMatrix& b : blocks) sum += b;
  return sum;
}

double SemispectralDensity::min_block_eigenvalue() const {
  double lo = 0.0;
  bool first = true;
  for (const ComplexMatrix& b : blocks) {
    const HermitianEigen eig = hermitian_eigen(b);
    if (first || eig.values[0] < lo) lo = eig.values[0];
    first = false;
  }
  return lo;
}

SemispectralDensity semispectral_density(const BoundaryGrid& grid,
                                         const ComplexMatrix& t) {
  check_numrange_margin(grid, t);
  return assemble_density(grid, t);
}

SemispectralDensity semispectral_density_unchecked(const BoundaryGrid& grid,
                                                   const ComplexMatrix& t) {
  return assemble_density(grid, t);
}

ComplexMatrix reconstruct(const RationalFunction& u, const ComplexMatrix& t,
                          const BoundaryGrid& grid, const NPOperator& np) {
  const double pole_slack =
      1e-6 * std::max(1.0, grid.region.circumradius());
  for (const PoleTerm& p : u.poles())
    require(outside_distance(grid.region, p.location) >= pole_slack,
            ErrorKind::PoleOnSpectrum, "pole inside or hugging the region");

  const SemispectralDensity density = semispectral_density(grid, t);

  std::vector<cplx> g_re(grid.M), g_im(grid.M);
  for (int j = 0; j < grid.M; ++j) {
    const cplx val = rat_eval(u, grid.nodes[j]);
    g_re[j] = cplx(val.real());
    g_im[j] = cplx(val.imag());
  }
  const std::vector<cplx> phi_re = np.apply_s(g_re);
  const std::vector<cplx> phi_im = np.apply_s(g_im);

  ComplexMatrix out(t.dim());
  for (int j = 0; j < grid.M; ++j) {
    const cplx coeff = phi_re[j] + cplx(0.0, 1.0) * phi_im[j];
    out += coeff * density.blocks[j];
  }
  return out;
}

double MeasureVector::total_variation() const {
  double tv = 0.0;
  for (cplx v : values) tv += std::abs(v);
  return tv;
}

cplx MeasureVector::total() const {
  cplx s(0.0);
  for (cplx v : values) s += v;
  return s;
}

MeasureVector elementary_measure(const ComplexMatrix& t,
                                 const BoundaryGrid& grid, const NPOperator& np,
                                 const std::vector<cplx>& f,
                                 const std::vector<cplx>& g) {
  check_vec_dim(f, t.dim(), "elementary_measure f");
  check_vec_dim(g, t.dim(), "elementary_measure g");
  const SemispectralDensity density = semispectral_density(grid, t);
  std::vector<cplx> nu(grid.M);
  for (int j = 0; j < grid.M; ++j)
    nu[j] = inner(mat_vec(density.blocks[j], f), g);
  return MeasureVector{np.apply_s_transpose(nu)};
}

double realness_check(const ComplexMatrix& t, const BoundaryGrid& grid,
                      const NPOperator& np, const std::vector<cplx>& f) {
  const MeasureVector mu = elementary_measure(t, grid, np, f, f);
  double worst = 0.0;
  for (cplx v : mu.values) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

}  // namespace specbench
