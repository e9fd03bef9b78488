// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

namespace ratemig {

/// Square matrix stored by diagonals: entry (i, j) is kept iff
/// -lower <= j - i <= upper.  Reads outside the band return 0; writes
/// outside throw.  Row i of the band lives contiguously, offset j - i +
/// lower, which keeps element assembly cache friendly.
class BandedMatrix {
 public:
  BandedMatrix(int n, int lower_bandwidth, int upper_bandwidth);

  int size() const noexcept { return n_; }
  int lower_bandwidth() const noexcept { return kl_; }
  int upper_bandwidth() const noexcept { return ku_; }

  bool in_band(int i, int j) const noexcept {
    return i >= 0 && i < n_ && j >= 0 && j < n_ && j - i >= -kl_ && j - i <= ku_;
  }

  double at(int i, int j) const;
  double& entry(int i, int j);
  void add(int i, int j, double value) { entry(i, j) += value; }

  /// Zeroes every stored entry of row i.
  void clear_row(int i);

  /// this += factor * other; bandwidths and size must match.
  void add_scaled(const BandedMatrix& other, double factor);

  /// y = A x.
  std::vector<double> multiply(std::span<const double> x) const;

  /// Transpose; bandwidths swap.
  BandedMatrix transposed() const;

  /// Largest absolute stored entry (the pivot scale of the factorization).
  double max_abs() const noexcept;

 private:
  int n_, kl_, ku_;
  std::vector<double> data_;

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_);
  }
};

/// LU factorization with partial pivoting of a banded matrix.  Row swaps
/// widen the upper band by at most lower_bandwidth, which the working
/// storage accommodates; the factorization is computed once and may be
/// reused for many right-hand sides.
class BandedLU {
 public:
  /// Factorizes a copy of the matrix.  Throws SingularSystemError when a
  /// pivot falls below 1e-14 times the largest entry of the input.
  explicit BandedLU(const BandedMatrix& matrix);

  int size() const noexcept { return n_; }

  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  int n_, kl_, ku_;
  int width_;                 // stored columns per row: 2 kl + ku + 1
  std::vector<double> work_;  // U in the upper part, L multipliers below
  std::vector<int> pivot_;    // row swapped with k at elimination step k

  double& at(int i, int j) noexcept {
    return work_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
  }
  double get(int i, int j) const noexcept {
    const int off = j - i + kl_;
    if (off < 0 || off >= width_) return 0.0;
    return work_[static_cast<std::size_t>(i) * width_ + off];
  }
};

/// Convenience single-shot factor-and-solve.
std::vector<double> solve_banded(const BandedMatrix& matrix, std::span<const double> rhs);

}  // namespace ratemig
