#include "eup/bordered_matrix.hpp"

#include <algorithm>
#include <cmath>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const double* ab, const int* ldab, const int* ipiv,
             double* b, const int* ldb, int* info);
}

namespace eup {

BorderedBandMatrix::BorderedBandMatrix(int core_size, int lower_bandwidth,
                                       int upper_bandwidth)
    : n_(core_size),
      kl_(lower_bandwidth),
      ku_(upper_bandwidth),
      ldab_(2 * lower_bandwidth + upper_bandwidth + 1),
      band_(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(core_size), 0.0),
      ipiv_(static_cast<std::size_t>(core_size), 0),
      ucol_(static_cast<std::size_t>(core_size), 0.0),
      vrow_(static_cast<std::size_t>(core_size), 0.0) {
  if (core_size <= 0) throw std::invalid_argument("bordered matrix: empty core");
  if (kl_ < 0 || ku_ < 0) throw std::invalid_argument("bordered matrix: bad bandwidth");
}

double& BorderedBandMatrix::core(int row, int col) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_ || row - col > kl_ || col - row > ku_)
    throw std::out_of_range("bordered matrix: entry outside band");
  return band_[static_cast<std::size_t>(kl_ + ku_ + row - col) +
               static_cast<std::size_t>(col) * static_cast<std::size_t>(ldab_)];
}

double BorderedBandMatrix::entry(int row, int col) const {
  if (row == n_ && col == n_) return corner_;
  if (row == n_) return vrow_[static_cast<std::size_t>(col)];
  if (col == n_) return ucol_[static_cast<std::size_t>(row)];
  if (row - col > kl_ || col - row > ku_) return 0.0;
  return band_[static_cast<std::size_t>(kl_ + ku_ + row - col) +
               static_cast<std::size_t>(col) * static_cast<std::size_t>(ldab_)];
}

void BorderedBandMatrix::factor() {
  fact_ = band_;
  int info = 0;
  dgbtrf_(&n_, &n_, &kl_, &ku_, fact_.data(), &ldab_, ipiv_.data(), &info);
  if (info != 0)
    throw SingularMatrixError("band factorization failed at pivot " + std::to_string(info));
  factored_ = true;
}

std::vector<double> BorderedBandMatrix::core_solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  const char trans = 'N';
  const int nrhs = 1;
  int info = 0;
  dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, fact_.data(), &ldab_, ipiv_.data(), x.data(),
          &n_, &info);
  if (info != 0) throw SingularMatrixError("band back-substitution failed");
  return x;
}

BorderedBandMatrix::Solution BorderedBandMatrix::solve(std::span<const double> rhs_core,
                                                       double rhs_border) const {
  if (!factored_) throw std::logic_error("bordered matrix: solve before factor");
  if (static_cast<int>(rhs_core.size()) != n_)
    throw std::invalid_argument("bordered matrix: rhs size mismatch");
  const std::vector<double> z1 = core_solve(rhs_core);
  const std::vector<double> z2 = core_solve(ucol_);
  double vz1 = 0.0, vz2 = 0.0;
  for (int i = 0; i < n_; ++i) {
    vz1 += vrow_[static_cast<std::size_t>(i)] * z1[static_cast<std::size_t>(i)];
    vz2 += vrow_[static_cast<std::size_t>(i)] * z2[static_cast<std::size_t>(i)];
  }
  const double denom = corner_ - vz2;
  if (denom == 0.0 || !std::isfinite(denom))
    throw SingularMatrixError("border Schur complement is singular");
  Solution sol;
  sol.border = (rhs_border - vz1) / denom;
  sol.core.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    sol.core[static_cast<std::size_t>(i)] =
        z1[static_cast<std::size_t>(i)] - sol.border * z2[static_cast<std::size_t>(i)];
  return sol;
}

}  // namespace eup
