#include "consensus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace consensus {

namespace {

double frobenius(const DenseMatrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    raise(Errc::invalid_params, "DenseMatrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               0.0);
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

DenseMatrix mat_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    raise(Errc::dimension_mismatch, "mat_product: inner dimensions disagree");
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> mat_vec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != static_cast<int>(x.size()))
    raise(Errc::dimension_mismatch, "mat_vec: size disagrees with columns");
  std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

SymEig sym_eig(const DenseMatrix& input) {
  const int n = input.rows();
  if (n != input.cols())
    raise(Errc::dimension_mismatch, "sym_eig: matrix is not square");
  const double scale = max_abs(input);
  if (!std::isfinite(scale))
    raise(Errc::non_finite, "sym_eig: non-finite entries");
  if (!input.is_symmetric(1e-12 * std::max(scale, 1.0)))
    raise(Errc::not_symmetric, "sym_eig: matrix is not symmetric");

  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);
  const double off_target = 1e-12 * std::max(frobenius(input), 1e-300);

  auto off_diagonal = [&]() {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal() > off_target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0)
                             ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                             : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(p, r) = a(r, p);
          a(r, q) = s * arp + c * arq;
          a(q, r) = a(r, q);
        }
        for (int r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (off_diagonal() > off_target)
    raise(Errc::no_convergence, "sym_eig: Jacobi sweeps did not converge");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x) < a(y, y); });

  SymEig out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = DenseMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i)
      out.vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
  }
  return out;
}

DenseMatrix deflate_ones_complement(const DenseMatrix& m) {
  const int n = m.rows();
  if (n != m.cols())
    raise(Errc::dimension_mismatch,
          "deflate_ones_complement: matrix is not square");
  // P M P with P = I - (1/n) 1 1^T, assembled entrywise from row, column and
  // total means.
  const auto nd = static_cast<double>(n == 0 ? 1 : n);
  std::vector<double> row_mean(static_cast<std::size_t>(n), 0.0);
  std::vector<double> col_mean(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v))
        raise(Errc::non_finite, "deflate_ones_complement: non-finite entry");
      row_mean[static_cast<std::size_t>(i)] += v;
      col_mean[static_cast<std::size_t>(j)] += v;
      total += v;
    }
  }
  for (auto& v : row_mean) v /= nd;
  for (auto& v : col_mean) v /= nd;
  total /= nd * nd;

  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = m(i, j) - row_mean[static_cast<std::size_t>(i)] -
                col_mean[static_cast<std::size_t>(j)] + total;
  return a;
}

double spectral_radius_complement(const DenseMatrix& m, double tol) {
  const int n = m.rows();
  if (n != m.cols())
    raise(Errc::dimension_mismatch,
          "spectral_radius_complement: matrix is not square");
  if (tol <= 0.0)
    raise(Errc::invalid_params, "spectral_radius_complement: tol must be > 0");
  if (n <= 1) return 0.0;

  DenseMatrix a = deflate_ones_complement(m);
  const double norm0 = frobenius(a);
  if (norm0 == 0.0) return 0.0;

  // Gelfand: rho = lim_s ||A^(2^s)||^(1/2^s).  The iterate is kept at unit
  // Frobenius norm while the true norm is accumulated in log space, so radii
  // far outside double range (schedule products can reach 1e300 or 1e-300
  // before the limit is taken) stay representable.
  DenseMatrix c = a;
  for (auto& v : c.data()) v /= norm0;
  double log_norm = std::log(norm0);
  double estimate = norm0;
  int small_diffs = 0;

  constexpr int kMaxSquarings = 60;
  for (int s = 1; s <= kMaxSquarings; ++s) {
    DenseMatrix sq = mat_product(c, c);
    const double f = frobenius(sq);
    if (!std::isfinite(f))
      raise(Errc::non_finite, "spectral_radius_complement: iterate overflow");
    if (f == 0.0) return 0.0;  // nilpotent on the complement
    log_norm = 2.0 * log_norm + std::log(f);
    for (auto& v : sq.data()) v /= f;
    c = std::move(sq);

    const double next = std::exp(log_norm / std::exp2(s));
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (s >= 4 && diff <= tol * std::max(estimate, 1e-300)) {
      if (++small_diffs >= 2) return estimate;
    } else {
      small_diffs = 0;
    }
  }
  raise(Errc::no_convergence,
        "spectral_radius_complement: estimates did not settle");
}

double robust_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    const double ax = std::abs(x);
    if (std::isnan(ax)) return ax;
    m = std::max(m, ax);
  }
  if (m == 0.0 || std::isinf(m)) return m;
  double sum = 0.0;
  for (double x : v) {
    const double r = x / m;
    sum += r * r;
  }
  return m * std::sqrt(sum);
}

}  // namespace consensus
