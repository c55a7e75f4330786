#pragma once

#include <vector>

#include "specbench/common.hpp"

namespace specbench {

// Dense square complex matrix, row-major storage.  Everything here is
// desk-scale: dimensions 1..256, deterministic algorithms only (no pivoting
// on anything but magnitude, no randomized solvers), so two runs of the same
// build produce bit-identical results.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::vector<cplx> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diag(const std::vector<cplx>& d);

  int dim() const { return dim_; }
  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const cplx& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }
  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  ComplexMatrix adjoint() const;
  double frobenius() const;
  double max_abs() const;
  cplx trace() const;
  void check_finite(const char* who) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> mat_vec(const ComplexMatrix& a, const std::vector<cplx>& x);
cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y);  // <x,y>
double vec_norm(const std::vector<cplx>& x);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // k-th column pairs with values[k]
};

// Cyclic complex Jacobi rotations.  Fixed budget of 100 sweeps; declares
// convergence once the off-diagonal Frobenius mass drops below
// 1e-14 * ||M||_F.  Input must be Hermitian to 1e-12 * ||M||_F.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

// PA = LU with partial pivoting by magnitude.  A pivot below
// 1e-14 * ||A||_F raises Singular.  The same factorization also solves
// systems with A^T (not A*), which costs nothing extra.
class LuFactors {
 public:
  static LuFactors factor(const ComplexMatrix& a);

  std::vector<cplx> solve(std::vector<cplx> b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;
  std::vector<cplx> solve_transpose(const std::vector<cplx>& b) const;
  int dim() const { return lu_.dim(); }

 private:
  LuFactors() = default;
  ComplexMatrix lu_;
  std::vector<int> perm_;  // row i of LU came from row perm_[i] of A
};

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest singular value, via the top eigenvalue of A*A.
double spectral_norm(const ComplexMatrix& a);

// Hermitian positive-definite square root.  Eigenvalues must clear
// 1e-12 * ||H||_F or NotPositiveDefinite is raised.
ComplexMatrix matrix_sqrt_hpd(const ComplexMatrix& h);

ComplexMatrix resolvent(const ComplexMatrix& t, cplx zeta);

// coeff is ascending: coeff[0] + coeff[1] z + ...  Horner in matrix form.
ComplexMatrix poly_eval_matrix(const std::vector<cplx>& coeff,
                               const ComplexMatrix& t);

}  // namespace specbench
