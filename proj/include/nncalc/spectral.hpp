#pragma once

#include "nncalc/dense.hpp"

namespace nncalc {

// All eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

// Spectral norm. Symmetric inputs (exact entry equality) go through Jacobi
// and return max |eigenvalue|; general inputs use power iteration on the
// Gram operator with tolerance 1e-12 and an iteration cap of 1e5.
// Throws std::runtime_error if the iteration fails to settle.
double spectral_norm(const DenseMatrix& a);

bool is_symmetric(const DenseMatrix& a);

} // namespace nncalc
