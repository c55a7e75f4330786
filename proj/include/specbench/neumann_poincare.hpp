#pragma once

#include <vector>

#include "specbench/boundary.hpp"
#include "specbench/rational.hpp"

namespace specbench {

// Nystrom matrix of the boundary double-layer operator.  Entries are stored
// as plain reals: the operator maps real boundary data to real data, and
// keeping the storage real makes that structural rather than numerical.
// The Dirichlet solve S = 2(I+K)^{-1} reuses one LU factorization of I+K.
class NPOperator {
 public:
  explicit NPOperator(BoundaryGrid grid);

  const BoundaryGrid& grid() const { return grid_; }
  double entry(int i, int j) const {
    return k_[static_cast<size_t>(i) * grid_.M + j];
  }
  double row_sum(int i) const;

  // phi = 2 (I+K)^{-1} g.  Real input stays exactly real.
  std::vector<cplx> apply_s(const std::vector<cplx>& g) const;
  // mu = 2 (I+K)^{-T} nu, the transpose pairing used by node measures.
  std::vector<cplx> apply_s_transpose(const std::vector<cplx>& nu) const;

 private:
  BoundaryGrid grid_;
  std::vector<double> k_;
  // Partial-pivot LU of I + K in real arithmetic.  The grid count M is not
  // bound by the operator dimension cap, so the solve cannot go through
  // ComplexMatrix; a real factorization also keeps real data real by
  // construction.
  std::vector<double> lu_;
  std::vector<int> pivots_;
};

NPOperator np_matrix(const BoundaryGrid& grid);

// phi = S g through the cached factorization.
std::vector<cplx> dirichlet_density(const NPOperator& np,
                                    const std::vector<cplx>& g);

// D[phi](z) = (1/2pi) sum_j phi_j Re(n_j / (zeta_j - z)) w_j for z interior,
// at least 5 grid spacings from the boundary.
cplx double_layer_eval(const BoundaryGrid& grid, const std::vector<cplx>& phi,
                       cplx z);

// Discretized boundary density of the semispectral measure: one Hermitian
// block per node, weights absorbed.
struct SemispectralDensity {
  BoundaryGrid grid;
  std::vector<ComplexMatrix> blocks;

  ComplexMatrix total() const;  // sum of blocks, fixed node order
  double min_block_eigenvalue() const;
};

// F_j = (w_j/4pi) (n_j R(zeta_j) + conj(n_j) R(zeta_j)*), R = resolvent of T.
// Requires W(T) inside the curve's region with the grid margin.
SemispectralDensity semispectral_density(const BoundaryGrid& grid,
                                         const ComplexMatrix& t);
// Same blocks without the margin gate, for negative controls that place
// W(T) on or across the boundary.  The checked entry point is the contract.
SemispectralDensity semispectral_density_unchecked(const BoundaryGrid& grid,
                                                   const ComplexMatrix& t);

// sum_j (S u)_j F_j, evaluated by splitting boundary samples of u into real
// and imaginary parts; equals u(T) up to quadrature error.
ComplexMatrix reconstruct(const RationalFunction& u, const ComplexMatrix& t,
                          const BoundaryGrid& grid, const NPOperator& np);

// Complex measure on the grid nodes, weights absorbed.
struct MeasureVector {
  std::vector<cplx> values;

  double total_variation() const;
  cplx total() const;
};

// mu_k = sum_j S_jk <F_j f, g>: the node measure with
// sum_k u(zeta_k) mu_k = <reconstruct(u) f, g>.
MeasureVector elementary_measure(const ComplexMatrix& t,
                                 const BoundaryGrid& grid, const NPOperator& np,
                                 const std::vector<cplx>& f,
                                 const std::vector<cplx>& g);

// max_k |Im mu_k| for mu = mu_{f,f}; structurally tiny because the blocks
// are Hermitian and S is real.
double realness_check(const ComplexMatrix& t, const BoundaryGrid& grid,
                      const NPOperator& np, const std::vector<cplx>& f);

}  // namespace specbench
