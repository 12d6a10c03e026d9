#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "divcurl/error.hpp"

namespace divcurl {

using Vector = std::vector<double>;

struct Triplet {
  int row;
  int col;
  double value;
};

/// Symmetric sparse matrix in full CSR storage.
///
/// Built from triplets that the assemblers emit in symmetric pairs; duplicate
/// entries are summed in insertion order, so entry (i,j) and (j,i) see the
/// same additions in the same order and come out bit-identical.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  SparseSymMatrix(int n, std::vector<Triplet> triplets) : n_(n) {
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : triplets) {
      if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
        throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
      }
      if (!cols_.empty() && last_row_ == t.row && cols_.back() == t.col) {
        values_.back() += t.value;
        continue;
      }
      cols_.push_back(t.col);
      values_.push_back(t.value);
      ++row_ptr_[static_cast<std::size_t>(t.row) + 1];
      last_row_ = t.row;
    }
    for (int i = 0; i < n; ++i) row_ptr_[static_cast<std::size_t>(i) + 1] += row_ptr_[static_cast<std::size_t>(i)];
  }

  int size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const int> row_cols(int i) const {
    return {cols_.data() + row_ptr_[static_cast<std::size_t>(i)],
            static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i) + 1] - row_ptr_[static_cast<std::size_t>(i)])};
  }
  std::span<const double> row_values(int i) const {
    return {values_.data() + row_ptr_[static_cast<std::size_t>(i)],
            static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i) + 1] - row_ptr_[static_cast<std::size_t>(i)])};
  }

  /// Entry lookup by binary search; zero when not stored.
  double operator()(int i, int j) const {
    auto c = row_cols(i);
    auto it = std::lower_bound(c.begin(), c.end(), j);
    if (it == c.end() || *it != j) return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - c.begin())];
  }

  void multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      const auto c = row_cols(i);
      const auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) s += v[k] * x[static_cast<std::size_t>(c[k])];
      y[static_cast<std::size_t>(i)] = s;
    }
  }
  Vector operator*(std::span<const double> x) const {
    check_size(x.size());
    Vector y(static_cast<std::size_t>(n_));
    multiply(x, y);
    return y;
  }

  Vector diagonal() const {
    Vector d(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) d[static_cast<std::size_t>(i)] = (*this)(i, i);
    return d;
  }

  double quadratic_form(std::span<const double> x) const {
    check_size(x.size());
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      double r = 0.0;
      const auto c = row_cols(i);
      const auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) r += v[k] * x[static_cast<std::size_t>(c[k])];
      s += x[static_cast<std::size_t>(i)] * r;
    }
    return s;
  }

  /// this + alpha * other.
  SparseSymMatrix plus(const SparseSymMatrix& other, double alpha = 1.0) const {
    if (other.n_ != n_) throw Error(ErrorCode::InvalidArgument, "matrix size mismatch");
    std::vector<Triplet> t;
    t.reserve(nonzeros() + other.nonzeros());
    append_triplets(t, 1.0);
    other.append_triplets(t, alpha);
    return SparseSymMatrix(n_, std::move(t));
  }

  /// Principal submatrix on the given (sorted) index list.
  SparseSymMatrix principal(std::span<const int> idx) const {
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) pos[static_cast<std::size_t>(idx[k])] = static_cast<int>(k);
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const int i = idx[k];
      const auto c = row_cols(i);
      const auto v = row_values(i);
      for (std::size_t q = 0; q < c.size(); ++q) {
        const int pj = pos[static_cast<std::size_t>(c[q])];
        if (pj >= 0) t.push_back({static_cast<int>(k), pj, v[q]});
      }
    }
    return SparseSymMatrix(static_cast<int>(idx.size()), std::move(t));
  }

  Eigen::SparseMatrix<double> to_eigen() const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(nonzeros());
    for (int i = 0; i < n_; ++i) {
      const auto c = row_cols(i);
      const auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) t.emplace_back(i, c[k], v[k]);
    }
    Eigen::SparseMatrix<double> m(n_, n_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  void append_triplets(std::vector<Triplet>& t, double alpha) const {
    for (int i = 0; i < n_; ++i) {
      const auto c = row_cols(i);
      const auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], alpha * v[k]});
    }
  }

 private:
  void check_size(std::size_t m) const {
    if (m != static_cast<std::size_t>(n_)) {
      throw Error(ErrorCode::InvalidArgument, "vector length differs from matrix dimension");
    }
  }

  int n_ = 0;
  int last_row_ = -1;
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

inline double vdot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double vnorm(std::span<const double> a) { return std::sqrt(vdot(a, a)); }
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace divcurl
