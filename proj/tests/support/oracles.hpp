#pragma once

// Independent cross-checks used only by the test suite.  These deliberately
// avoid the library's own algorithms: roots come from Durand-Kerner on the
// characteristic polynomial, integrals from Romberg, norms from random
// probing.  Agreement between the two stacks is the point.

#include <functional>
#include <vector>

#include "specbench/complex_matrix.hpp"
#include "specbench/rng.hpp"

namespace specbench::testing {

// Characteristic polynomial coefficients (ascending) via Faddeev-LeVerrier.
std::vector<cplx> char_poly(const ComplexMatrix& t);

// All roots of an ascending-coefficient polynomial, Durand-Kerner iteration.
std::vector<cplx> poly_roots(std::vector<cplx> coeff);

// Eigenvalues of a small (dim <= 16) matrix through the two calls above.
std::vector<cplx> small_eigenvalues(const ComplexMatrix& t);

// Lower bound on the spectral norm by random unit probing.
double probe_norm_lower_bound(const ComplexMatrix& a, int trials,
                              uint64_t seed);

// Romberg integration of a smooth function over [a, b].
double romberg(const std::function<double(double)>& f, double a, double b,
               int levels = 16);

}  // namespace specbench::testing
