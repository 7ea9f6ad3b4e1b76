#include "zz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zz {

static double off_norm(const std::vector<std::vector<double>>& a) {
  double s = 0.0;
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const size_t n = a.size();
  if (n == 0) throw std::invalid_argument("jacobi: empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("jacobi: not square");

  const double tol = 1e-12;
  const int max_sweeps = 128;
  for (int sweep = 0; sweep < max_sweeps && off_norm(a) >= tol; ++sweep) {
    for (size_t p = 0; p + 1 < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (std::fabs(apq) < tol / (double)(n * n + 1)) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace zz
