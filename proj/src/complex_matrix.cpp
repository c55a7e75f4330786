#include "specbench/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specbench {

namespace {
constexpr int kMaxDim = 256;

void check_dim(int dim) {
  require(dim >= 1 && dim <= kMaxDim, ErrorKind::BadDimension,
          "matrix dimension must be in [1, 256], got " + std::to_string(dim));
}
}  // namespace

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::BadCurve: return "BadCurve";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::ContourThroughSpectrum: return "ContourThroughSpectrum";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NearPole: return "NearPole";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::OverlapError: return "OverlapError";
    case ErrorKind::PoleOnSpectrum: return "PoleOnSpectrum";
    case ErrorKind::RegionViolation: return "RegionViolation";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
  }
  return "Error";
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  check_dim(dim);
  a_.assign(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries)
    : dim_(dim), a_(std::move(entries)) {
  check_dim(dim);
  require(a_.size() == static_cast<size_t>(dim) * dim, ErrorKind::BadInput,
          "entry count does not match dim*dim");
  check_finite("ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double s = 0.0;
  for (const cplx& v : a_) s = std::max(s, std::abs(v));
  return s;
}

cplx ComplexMatrix::trace() const {
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) s += at(i, i);
  return s;
}

void ComplexMatrix::check_finite(const char* who) const {
  for (const cplx& v : a_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            ErrorKind::BadInput, std::string(who) + ": non-finite entry");
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require(dim_ == o.dim_, ErrorKind::BadDimension, "matrix size mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require(dim_ == o.dim_, ErrorKind::BadDimension, "matrix size mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), ErrorKind::BadDimension, "matrix size mismatch");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      r.at(a.dim() + i, a.dim() + j) = b.at(i, j);
  return r;
}

std::vector<cplx> mat_vec(const ComplexMatrix& a, const std::vector<cplx>& x) {
  require(static_cast<int>(x.size()) == a.dim(), ErrorKind::BadDimension,
          "mat_vec size mismatch");
  std::vector<cplx> y(x.size(), cplx(0.0, 0.0));
  for (int i = 0; i < a.dim(); ++i) {
    cplx s = 0.0;
    for (int j = 0; j < a.dim(); ++j) s += a.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  require(x.size() == y.size(), ErrorKind::BadDimension, "inner size mismatch");
  cplx s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
  return s;
}

double vec_norm(const std::vector<cplx>& x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return std::sqrt(s);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  m.check_finite("hermitian_eigen");
  const int n = m.dim();
  const double scale = m.frobenius();
  {
    const ComplexMatrix gap = m - m.adjoint();
    require(gap.frobenius() <= 1e-12 * std::max(scale, 1e-300) + 1e-300,
            ErrorKind::NotHermitian, "hermitian_eigen: input not Hermitian");
  }

  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double stop = 1e-14 * scale;

  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a.at(i, j));
    return std::sqrt(s);
  };

  bool converged = (n == 1) || off_mass() <= stop;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double g = std::abs(apq);
        if (g <= stop / (10.0 * n * n) || g == 0.0) continue;
        const double alpha = a.at(p, p).real();
        const double beta = a.at(q, q).real();
        const cplx phase = apq / g;  // e^{i phi}

        // 2x2 annihilation: tan(2 theta) = 2|apq| / (a_pp - a_qq).
        const double tau = (alpha - beta) / (2.0 * g);
        const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns: A <- A U with U = [[c, -s phase],[s conj(phase), c]].
        for (int i = 0; i < n; ++i) {
          const cplx x = a.at(i, p), y = a.at(i, q);
          a.at(i, p) = c * x + s * std::conj(phase) * y;
          a.at(i, q) = -s * phase * x + c * y;
        }
        // Rows: A <- U* A.
        for (int j = 0; j < n; ++j) {
          const cplx x = a.at(p, j), y = a.at(q, j);
          a.at(p, j) = c * x + s * phase * y;
          a.at(q, j) = -s * std::conj(phase) * x + c * y;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = a.at(p, p).real();
        a.at(q, q) = a.at(q, q).real();

        for (int i = 0; i < n; ++i) {
          const cplx x = v.at(i, p), y = v.at(i, q);
          v.at(i, p) = c * x + s * std::conj(phase) * y;
          v.at(i, q) = -s * phase * x + c * y;
        }
      }
    }
    converged = off_mass() <= stop;
  }
  require(converged, ErrorKind::NoConvergence,
          "hermitian_eigen: 100 Jacobi sweeps exhausted");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a.at(i, i).real() < a.at(j, j).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a.at(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
  }
  return out;
}

LuFactors LuFactors::factor(const ComplexMatrix& a) {
  a.check_finite("LuFactors");
  const int n = a.dim();
  const double tol = 1e-14 * std::max(a.frobenius(), 1e-300);

  LuFactors f;
  f.lu_ = a;
  f.perm_.resize(n);
  std::iota(f.perm_.begin(), f.perm_.end(), 0);
  ComplexMatrix& lu = f.lu_;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu.at(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    require(best > tol, ErrorKind::Singular,
            "pivot below 1e-14 * ||A|| at column " + std::to_string(k));
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
      std::swap(f.perm_[k], f.perm_[piv]);
    }
    const cplx d = lu.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx l = lu.at(i, k) / d;
      lu.at(i, k) = l;
      if (l == cplx(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) lu.at(i, j) -= l * lu.at(k, j);
    }
  }
  return f;
}

std::vector<cplx> LuFactors::solve(std::vector<cplx> b) const {
  const int n = lu_.dim();
  require(static_cast<int>(b.size()) == n, ErrorKind::BadDimension,
          "rhs size mismatch");
  std::vector<cplx> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (int i = 1; i < n; ++i) {
    cplx s = x[i];
    for (int j = 0; j < i; ++j) s -= lu_.at(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu_.at(i, j) * x[j];
    x[i] = s / lu_.at(i, i);
  }
  return x;
}

ComplexMatrix LuFactors::solve(const ComplexMatrix& b) const {
  const int n = lu_.dim();
  require(b.dim() == n, ErrorKind::BadDimension, "rhs size mismatch");
  ComplexMatrix x(n);
  std::vector<cplx> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b.at(i, j);
    col = solve(std::move(col));
    for (int i = 0; i < n; ++i) x.at(i, j) = col[i];
  }
  return x;
}

// A = P^T L U, so A^T x = b  <=>  U^T y = b, L^T z = y, x = P^T z.
std::vector<cplx> LuFactors::solve_transpose(const std::vector<cplx>& b) const {
  const int n = lu_.dim();
  require(static_cast<int>(b.size()) == n, ErrorKind::BadDimension,
          "rhs size mismatch");
  std::vector<cplx> y(n);
  for (int i = 0; i < n; ++i) {
    cplx s = b[i];
    for (int j = 0; j < i; ++j) s -= lu_.at(j, i) * y[j];
    y[i] = s / lu_.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = y[i];
    for (int j = i + 1; j < n; ++j) s -= lu_.at(j, i) * y[j];
    y[i] = s;
  }
  std::vector<cplx> x(n);
  for (int i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  return LuFactors::factor(a).solve(b);
}

double spectral_norm(const ComplexMatrix& a) {
  const ComplexMatrix ata = a.adjoint() * a;
  // A*A is Hermitian by construction up to rounding; symmetrize to be exact.
  ComplexMatrix h(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      h.at(i, j) = 0.5 * (ata.at(i, j) + std::conj(ata.at(j, i)));
  const HermitianEigen eig = hermitian_eigen(h);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

ComplexMatrix matrix_sqrt_hpd(const ComplexMatrix& h) {
  const double scale = std::max(h.frobenius(), 1e-300);
  const ComplexMatrix gap = h - h.adjoint();
  require(gap.frobenius() <= 1e-12 * scale, ErrorKind::NotHermitian,
          "matrix_sqrt_hpd: input not Hermitian");
  const HermitianEigen eig = hermitian_eigen(h);
  require(eig.values.front() > 1e-12 * scale, ErrorKind::NotPositiveDefinite,
          "matrix_sqrt_hpd: eigenvalue below 1e-12 * ||H||");
  const int n = h.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += eig.vectors.at(i, k) * std::sqrt(eig.values[k]) *
             std::conj(eig.vectors.at(j, k));
      r.at(i, j) = s;
    }
  }
  // Exact Hermitian symmetry of the result.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (r.at(i, j) + std::conj(r.at(j, i)));
      r.at(i, j) = m;
      r.at(j, i) = std::conj(m);
    }
    r.at(i, i) = r.at(i, i).real();
  }
  return r;
}

ComplexMatrix resolvent(const ComplexMatrix& t, cplx zeta) {
  const int n = t.dim();
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = (i == j ? zeta : cplx(0.0, 0.0)) - t.at(i, j);
  return solve(a, ComplexMatrix::identity(n));
}

ComplexMatrix poly_eval_matrix(const std::vector<cplx>& coeff,
                               const ComplexMatrix& t) {
  const int n = t.dim();
  ComplexMatrix acc(n);
  if (coeff.empty()) return acc;
  for (int i = 0; i < n; ++i) acc.at(i, i) = coeff.back();
  for (int k = static_cast<int>(coeff.size()) - 2; k >= 0; --k) {
    acc = acc * t;
    for (int i = 0; i < n; ++i) acc.at(i, i) += coeff[k];
  }
  return acc;
}

}  // namespace specbench
