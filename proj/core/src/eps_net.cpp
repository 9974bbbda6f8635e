#include "wvn/eps_net.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "wvn/error.hpp"

namespace wvn {

EpsNetResult eps_net_diagonalize(const Eigen::MatrixXcd& a, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps_net_diagonalize: eps must be > 0");
  if (a.rows() != a.cols()) throw DomainError("eps_net_diagonalize: matrix must be square");
  if (a.rows() == 0) throw DomainError("eps_net_diagonalize: empty matrix");
  if (a.rows() > kMaxNetDimension) throw DomainError("eps_net_diagonalize: N exceeds 512");
  if (!a.allFinite()) throw DomainError("eps_net_diagonalize: non-finite entry");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance * scale) throw DomainError("eps_net_diagonalize: matrix is not Hermitian");

  const Eigen::MatrixXcd h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eps_net_diagonalize: eigensolver failed");

  EpsNetResult out;
  out.u = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXd shift(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double mu = std::floor(lambda[i] / eps + 0.5) * eps;
    out.eigenvalues.push_back(lambda[i]);
    out.rounded.push_back(mu);
    shift[i] = mu - lambda[i];
    out.k_norm = std::max(out.k_norm, std::abs(shift[i]));
  }
  out.k = out.u * shift.cast<std::complex<double>>().asDiagonal() * out.u.adjoint();
  return out;
}

Eigen::MatrixXcd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw ParseError("csv line " + std::to_string(line_no) + ": empty cell");
      const std::string tok = cell.substr(b, e - b + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("csv line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("csv line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: no rows");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace wvn
