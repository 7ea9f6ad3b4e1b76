#pragma once

#include <vector>

namespace zz {

// Cyclic Jacobi on a dense symmetric matrix. Converges when the off-diagonal
// Frobenius norm drops below 1e-12; matrices here are normalized adjacencies,
// so the threshold is effectively absolute.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a);

}  // namespace zz
