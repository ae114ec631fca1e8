#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace eup {

/// Raised when a factorization encounters an exactly singular pivot.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Banded matrix augmented by one dense border row, one dense border column
/// and a corner scalar:
///
///     [ A  u ]
///     [ v' d ]
///
/// A is n-by-n with fixed lower/upper bandwidth. Factorization is a banded
/// LU of A (LAPACK dgbtrf) and solves eliminate the border through the
/// scalar Schur complement d - v' A^{-1} u.
class BorderedBandMatrix {
 public:
  BorderedBandMatrix(int core_size, int lower_bandwidth, int upper_bandwidth);

  int core_size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  /// Mutable access to a core entry; (row, col) must be inside the band.
  double& core(int row, int col);
  double& border_row(int col) { return vrow_[static_cast<std::size_t>(col)]; }
  double& border_col(int row) { return ucol_[static_cast<std::size_t>(row)]; }
  double& corner() { return corner_; }

  /// Entry of the full (n+1) x (n+1) bordered matrix; zero outside the band.
  double entry(int row, int col) const;

  /// Factorizes the core band. Throws SingularMatrixError on exact pivots.
  void factor();

  struct Solution {
    std::vector<double> core;
    double border = 0.0;
  };

  /// Solves [A u; v' d] x = [rhs_core; rhs_border]. Requires factor().
  Solution solve(std::span<const double> rhs_core, double rhs_border) const;

 private:
  std::vector<double> core_solve(std::span<const double> rhs) const;

  int n_, kl_, ku_, ldab_;
  std::vector<double> band_;   // assembled band, LAPACK layout with fill rows
  std::vector<double> fact_;   // factored copy
  std::vector<int> ipiv_;
  std::vector<double> ucol_, vrow_;
  double corner_ = 0.0;
  bool factored_ = false;
};

}  // namespace eup
