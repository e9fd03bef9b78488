// SPDX-License-Identifier: MIT
#include "ratemig/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ratemig/errors.hpp"

namespace ratemig {

BandedMatrix::BandedMatrix(int n, int lower_bandwidth, int upper_bandwidth)
    : n_(n), kl_(lower_bandwidth), ku_(upper_bandwidth) {
  if (n < 1) throw InvalidParameterError("matrix size must be positive, got " + std::to_string(n));
  if (kl_ < 0 || ku_ < 0 || kl_ > n - 1 || ku_ > n - 1)
    throw InvalidParameterError("bandwidths must lie in [0, n-1], got (" + std::to_string(kl_) +
                                ", " + std::to_string(ku_) + ") for n = " + std::to_string(n));
  data_.assign(static_cast<std::size_t>(n_) * (kl_ + ku_ + 1), 0.0);
}

double BandedMatrix::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw DomainError("matrix index (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside a " + std::to_string(n_) + " x " + std::to_string(n_) +
                      " matrix");
  if (!in_band(i, j)) return 0.0;
  return data_[index(i, j)];
}

double& BandedMatrix::entry(int i, int j) {
  if (!in_band(i, j))
    throw DomainError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") lies outside the stored band");
  return data_[index(i, j)];
}

void BandedMatrix::clear_row(int i) {
  for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) data_[index(i, j)] = 0.0;
}

void BandedMatrix::add_scaled(const BandedMatrix& other, double factor) {
  if (other.n_ != n_ || other.kl_ != kl_ || other.ku_ != ku_)
    throw InconsistentInputError("add_scaled requires matching size and bandwidths");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw InconsistentInputError("multiply: vector length " + std::to_string(x.size()) +
                                 " does not match matrix size " + std::to_string(n_));
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    const int lo = std::max(0, i - kl_), hi = std::min(n_ - 1, i + ku_);
    for (int j = lo; j <= hi; ++j) acc += data_[index(i, j)] * x[j];
    y[i] = acc;
  }
  return y;
}

BandedMatrix BandedMatrix::transposed() const {
  BandedMatrix t(n_, ku_, kl_);
  for (int i = 0; i < n_; ++i) {
    const int lo = std::max(0, i - kl_), hi = std::min(n_ - 1, i + ku_);
    for (int j = lo; j <= hi; ++j) t.entry(j, i) = data_[index(i, j)];
  }
  return t;
}

double BandedMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

BandedLU::BandedLU(const BandedMatrix& matrix)
    : n_(matrix.size()),
      kl_(matrix.lower_bandwidth()),
      ku_(matrix.upper_bandwidth()),
      width_(2 * kl_ + ku_ + 1) {
  work_.assign(static_cast<std::size_t>(n_) * width_, 0.0);
  pivot_.resize(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j)
      at(i, j) = matrix.at(i, j);

  const double tol = 1e-14 * std::max(matrix.max_abs(), 1e-300);
  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(k + kl_, n_ - 1);
    int p = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= tol)
      throw SingularSystemError("pivot " + std::to_string(best) + " at column " +
                                std::to_string(k) + " below tolerance " + std::to_string(tol));
    pivot_[k] = p;
    const int last_col = std::min(k + kl_ + ku_, n_ - 1);
    if (p != k)
      for (int c = k; c <= last_col; ++c) std::swap(at(k, c), at(p, c));
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = at(i, k) / at(k, k);
      at(i, k) = m;  // keep the multiplier in the L slot
      for (int c = k + 1; c <= last_col; ++c) at(i, c) -= m * at(k, c);
    }
  }
}

void BandedLU::solve_in_place(std::span<double> rhs) const {
  if (static_cast<int>(rhs.size()) != n_)
    throw InconsistentInputError("solve: rhs length " + std::to_string(rhs.size()) +
                                 " does not match matrix size " + std::to_string(n_));
  for (int k = 0; k < n_; ++k) {
    if (pivot_[k] != k) std::swap(rhs[k], rhs[pivot_[k]]);
    const int last_row = std::min(k + kl_, n_ - 1);
    for (int i = k + 1; i <= last_row; ++i) rhs[i] -= get(i, k) * rhs[k];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double acc = rhs[i];
    const int last_col = std::min(i + kl_ + ku_, n_ - 1);
    for (int j = i + 1; j <= last_col; ++j) acc -= get(i, j) * rhs[j];
    rhs[i] = acc / get(i, i);
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<double> solve_banded(const BandedMatrix& matrix, std::span<const double> rhs) {
  return BandedLU(matrix).solve(rhs);
}

}  // namespace ratemig
