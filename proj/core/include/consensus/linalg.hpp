#pragma once

#include <span>
#include <vector>

#include "consensus/error.hpp"

namespace consensus {

// Row-major dense matrix of doubles.  Deliberately minimal: the library only
// needs symmetric eigensolves, products, and a spectral-radius estimate on
// matrices up to a few hundred rows.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);

  static DenseMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool is_symmetric(double tol = 0.0) const;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// C = A * B.  Inner dimensions must agree; zero-sized operands are fine and
// produce a zero-sized result.
DenseMatrix mat_product(const DenseMatrix& a, const DenseMatrix& b);

std::vector<double> mat_vec(const DenseMatrix& a, std::span<const double> x);

// Full eigendecomposition of a symmetric matrix.
struct SymEig {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column j pairs with values[j]
};

// Cyclic Jacobi rotations.  Sweeps until the off-diagonal Frobenius norm
// drops below 1e-12 times the Frobenius norm of the input (at most 100
// sweeps, which is far more than n <= a few hundred ever needs).  Throws
// Errc::not_symmetric when |A - A^T| entries exceed 1e-12 * max|A|.
SymEig sym_eig(const DenseMatrix& a);

// A = P M P with P = I - (1/n) 1 1^T: M with the all-ones direction
// projected out of both sides.
DenseMatrix deflate_ones_complement(const DenseMatrix& m);

// Spectral radius of M restricted to the complement of span{1}: the largest
// |eigenvalue| of P M P with P = I - (1/n) 1 1^T.  Works for asymmetric M
// (schedule products are asymmetric) via Gelfand repeated squaring with
// log-space scale tracking, so near-zero and huge radii survive without
// under/overflow.  `tol` is the relative agreement between successive
// squaring estimates that ends the iteration.
double spectral_radius_complement(const DenseMatrix& m, double tol = 1e-8);

// Euclidean norm computed with max-rescaling so that vectors with entries
// around 1e-200 (late consensus trajectories) do not underflow to zero.
double robust_norm(std::span<const double> v);

}  // namespace consensus
