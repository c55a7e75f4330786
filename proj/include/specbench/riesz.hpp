#pragma once

#include <vector>

#include "specbench/boundary.hpp"
#include "specbench/neumann_poincare.hpp"
#include "specbench/rational.hpp"

namespace specbench {

// Circular quadrature contour for spectral projections.
struct Contour {
  cplx center;
  double radius = 0.0;
  int nodes = 128;  // at least 64
};

// Q = (2 pi i)^{-1} contour integral of the resolvent, by the trapezoid rule.
// Every node is gated on resolvent size (Frobenius, an upper bound on the
// operator norm), so a contour hugging the spectrum is rejected rather than
// silently producing garbage.
ComplexMatrix riesz_projection(const ComplexMatrix& t, const Contour& c);

// Number of eigenvalues enclosed, counted as round(Re tr Q).
int contour_eig_count(const ComplexMatrix& t, const Contour& c);

// Greedy single-linkage clustering of a known spectrum; one contour per
// cluster, radius = cluster spread + half the gap to the rest.  Fewer than
// two clusters at the 0.1*scale linking distance means no usable gap.
std::vector<Contour> auto_contours(const std::vector<cplx>& spectrum,
                                   double norm_scale, int nodes = 128);

struct IdempotentSystem {
  std::vector<ComplexMatrix> parts;  // Riesz projections, contour order
  ComplexMatrix remainder;           // I - sum of parts

  // Validation residuals, Frobenius: max ||Q^2-Q||, max ||Q_a Q_b|| (a != b),
  // max ||QT-TQ|| / ||T||.  All gated at 1e-8 on construction.
  double idempotent_residual = 0.0;
  double cross_residual = 0.0;
  double commutation_residual = 0.0;
};

IdempotentSystem idempotent_system(const ComplexMatrix& t,
                                   const std::vector<Contour>& contours);

// Similarity S = H^{1/2}, H = sum Q*Q + Q0*Q0.  H Q = Q* H makes each
// P = S Q S^{-1} self-adjoint; the system is validated to orthogonal-
// projection contracts at 1e-9.
struct OrthogonalizedSystem {
  ComplexMatrix similarity;                // S
  ComplexMatrix inverse;                   // S^{-1}
  std::vector<ComplexMatrix> projections;  // P_a, part order
  ComplexMatrix remainder_projection;      // P_0
  double condition = 1.0;                  // ||S|| * ||S^{-1}||, logged
};

OrthogonalizedSystem orthogonalize(const IdempotentSystem& sys);

// One orthonormal basis of a projection range, stored column by column.
using RangeBasis = std::vector<std::vector<cplx>>;

struct BlockDecomposition {
  // Compressions B* (S T S^{-1}) B per projection, part order, remainder
  // last when its rank is nonzero.
  std::vector<ComplexMatrix> blocks;
  std::vector<RangeBasis> bases;
  double off_block_residual = 0.0;  // ||S T S^{-1} - sum embedded blocks||_F
};

BlockDecomposition decompose_operator(const ComplexMatrix& t,
                                      const OrthogonalizedSystem& osys);

// Hausdorff distance between W(direct sum of blocks) and the hull of the
// individual block ranges; near zero when the split is genuine.
double verify_block_ranges(const std::vector<ComplexMatrix>& blocks,
                           int m = 720);

// Embed blocks back into the ambient space: sum_a B_a u(T_a) B_a*.
ComplexMatrix embed_blocks(const std::vector<ComplexMatrix>& blocks,
                           const std::vector<RangeBasis>& bases, int dim);

struct SimilaritySearchConfig {
  int restarts = 100;
  int steps = 300;
  uint64_t seed = 7;
};

struct SimilarityResult {
  ComplexMatrix similarity;  // best S found, upper triangular
  double achieved = 0.0;     // max spectral ratio of S^{-1} T S over battery
};

// Best-effort search for an invertible S making S^{-1} T S as close to a
// contraction on the sampler's region as the trial battery can certify.
// No guarantee of reaching 1; the achieved maximum is reported as-is.
SimilarityResult contractive_similarity_search(
    const ComplexMatrix& t_block, const RegionSampler& s,
    const SimilaritySearchConfig& cfg = {});

// Disjoint union of boundary grids: the discretized Shilov boundary of a
// multi-component region.  Measures over it concatenate node values in
// component order.
struct ComponentGrid {
  std::vector<BoundaryGrid> components;

  int total_nodes() const;
  std::vector<cplx> all_nodes() const;
};

ComponentGrid component_grid(std::vector<BoundaryGrid> parts);

// Restriction to a union of whole components.  Masks over the same grid form
// a Boolean algebra under complement/intersection, exactly.
struct MeasureProjection {
  std::vector<int> mask;   // sorted component indices
  std::vector<int> sizes;  // node count per component, identifies the grid
};

MeasureProjection whole_components(const ComponentGrid& grid,
                                   std::vector<int> mask);
MeasureProjection complement_projection(const MeasureProjection& q);
MeasureProjection intersect_projections(const MeasureProjection& a,
                                        const MeasureProjection& b);

MeasureVector measure_projection_apply(const MeasureProjection& q,
                                       const MeasureVector& mu);

// Nodewise u * mu over the concatenated grid.
MeasureVector measure_multiply(const RationalFunction& u,
                               const ComponentGrid& grid,
                               const MeasureVector& mu);

}  // namespace specbench
