#pragma once

#include <istream>
#include <vector>

#include <Eigen/Dense>

namespace wvn {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr Eigen::Index kMaxNetDimension = 512;

struct EpsNetResult {
  Eigen::MatrixXcd k;               // A + K has every eigenvalue on eps * Z
  std::vector<double> eigenvalues;  // of A, ascending
  std::vector<double> rounded;      // j * eps with j = floor(lambda / eps + 1/2)
  Eigen::MatrixXcd u;               // orthonormal eigenvectors (columns)
  double k_norm = 0.0;              // operator norm of K = max |rounded - eigenvalue|
};

// Throws DomainError for non-square or non-Hermitian input (tolerance
// 1e-10, relative to max(1, max |a_ij|)), N > 512 or eps <= 0.
EpsNetResult eps_net_diagonalize(const Eigen::MatrixXcd& a, double eps);

// Row-major real matrix, comma separated, one row per line. Blank lines and
// lines starting with '#' are skipped. Throws ParseError.
Eigen::MatrixXcd read_matrix_csv(std::istream& in);

}  // namespace wvn
