#include "lyap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace lyap {

Matrix::Matrix(std::size_t dim, Real fill) : dim_(dim), data_(dim * dim, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Real>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    if (r.size() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix rows must form a square array");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Real>>& rows) {
  const std::size_t d = rows.size();
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, "matrix must be non-empty");
  Matrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(d));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * d);
  }
  return m;
}

Real Matrix::max_entry() const { return *std::max_element(data_.begin(), data_.end()); }

Real Matrix::min_entry() const { return *std::min_element(data_.begin(), data_.end()); }

Real Matrix::norm_inf() const {
  Real best = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    Real s = 0;
    for (Real v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

Real Matrix::trace() const {
  Real t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator*=(Real c) {
  for (Real& v : data_) v *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "product of matrices of different size");
  const std::size_t d = a.dim();
  Matrix c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Real aik = a(i, k);
      for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator*(Real c, Matrix a) {
  a *= c;
  return a;
}

Vector operator*(const Matrix& a, std::span<const Real> x) {
  if (a.dim() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  Vector y(a.dim(), 0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Real s = 0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Real determinant(const Matrix& a) {
  const std::size_t d = a.dim();
  Matrix lu = a;
  Real det = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (lu(pivot, col) == 0) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(lu(pivot, j), lu(col, j));
      det = -det;
    }
    const Real p = lu(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < d; ++r) {
      const Real f = lu(r, col) / p;
      if (f == 0) continue;
      for (std::size_t j = col; j < d; ++j) lu(r, j) -= f * lu(col, j);
    }
  }
  return det;
}

Vector solve(Matrix a, Vector b) {
  const std::size_t d = a.dim();
  if (b.size() != d) throw Error(ErrorKind::DimensionMismatch, "right-hand side size mismatch");
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0) throw Error(ErrorKind::SingularMatrix, "singular system");
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a(pivot, j), a(col, j));
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < d; ++r) {
      const Real f = a(r, col) / a(col, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < d; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vector x(d);
  for (std::size_t i = d; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < d; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

std::optional<Issue> validate_positive(const Matrix& a) {
  const std::size_t d = a.dim();
  if (d == 0) return Issue{ErrorKind::DimensionMismatch, -1, -1, -1, "empty matrix"};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!(a(i, j) > 0)) {
        return Issue{ErrorKind::NonPositiveEntry, -1, static_cast<int>(i), static_cast<int>(j),
                     "entry must be strictly positive"};
      }
    }
  }
  // Hadamard's bound scales the singularity threshold to the matrix.
  Real scale = 1;
  for (std::size_t i = 0; i < d; ++i) {
    Real s = 0;
    for (Real v : a.row(i)) s += v * v;
    scale *= std::sqrt(s);
  }
  if (std::abs(determinant(a)) <= Real(16 * d) * kEpsilon * scale) {
    return Issue{ErrorKind::SingularMatrix, -1, -1, -1, "matrix is singular"};
  }
  return std::nullopt;
}

void require_positive(const Matrix& a) {
  if (auto issue = validate_positive(a)) throw Error(issue->kind, issue->describe());
}

namespace {

void check_word(std::span<const int> word, std::span<const Matrix> matrices) {
  if (word.empty()) throw Error(ErrorKind::InvalidArgument, "word must be non-empty");
  for (int s : word) {
    if (s < 0 || static_cast<std::size_t>(s) >= matrices.size()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "symbol " + std::to_string(s) + " outside 0.." +
                      std::to_string(static_cast<long>(matrices.size()) - 1));
    }
  }
}

Real hilbert_raw(std::span<const Real> x, std::span<const Real> y) {
  Real hi = x[0] / y[0];
  Real lo = hi;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Real r = x[i] / y[i];
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return std::log1p((hi - lo) / lo);
}

} // namespace

Matrix cycle_product(std::span<const int> word, std::span<const Matrix> matrices) {
  check_word(word, matrices);
  Matrix s = matrices[word[0]];
  for (std::size_t j = 1; j < word.size(); ++j) s = matrices[word[j]] * s;
  return s;
}

ScaledMatrix scaled_cycle_product(std::span<const int> word, std::span<const Matrix> matrices,
                                  int renorm_every) {
  check_word(word, matrices);
  if (renorm_every < 1) throw Error(ErrorKind::InvalidArgument, "renorm_every must be >= 1");
  ScaledMatrix out{matrices[word[0]], 0};
  auto renormalize = [&out] {
    const Real m = out.matrix.max_entry();
    out.matrix *= 1 / m;
    out.log_scale += std::log(m);
  };
  for (std::size_t j = 1; j < word.size(); ++j) {
    out.matrix = matrices[word[j]] * out.matrix;
    if (j % static_cast<std::size_t>(renorm_every) == 0) renormalize();
  }
  renormalize();
  return out;
}

PerronPair perron(const Matrix& a, Real tol, int max_iter) {
  const std::size_t d = a.dim();
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, "empty matrix");
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  PerronPair out;
  out.direction.assign(d, 1);
  for (int it = 1; it <= max_iter; ++it) {
    Vector next = a * std::span<const Real>(out.direction);
    const Real head = next[0];
    for (Real& v : next) v /= head;
    next[0] = 1;
    const Real step = hilbert_raw(next, out.direction);
    out.direction = std::move(next);
    if (step < tol) {
      out.iterations = it;
      Real lambda = 0;
      for (std::size_t j = 0; j < d; ++j) lambda += a(0, j) * out.direction[j];
      out.eigenvalue = lambda;
      return out;
    }
  }
  throw Error(ErrorKind::NoConvergence,
              "power iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

Vector char_poly(const Matrix& a) {
  const std::size_t d = a.dim();
  Vector c(d + 1, 0);
  c[d] = 1;
  // M_k = A M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A M_k) / k
  Matrix m(d);
  for (std::size_t k = 1; k <= d; ++k) {
    Matrix am = a * m;
    for (std::size_t i = 0; i < d; ++i) am(i, i) += c[d - k + 1];
    m = std::move(am);
    c[d - k] = -(a * m).trace() / static_cast<Real>(k);
  }
  return c;
}

Real poly_eval(std::span<const Real> coeffs, Real x) {
  Real acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

Real poly_derivative_eval(std::span<const Real> coeffs, Real x) {
  Real acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + static_cast<Real>(i) * coeffs[i];
  return acc;
}

Real det_factor_charpoly(const Matrix& a, Real lambda1) {
  const std::size_t d = a.dim();
  if (d <= 1) return 1;
  const Vector c = char_poly(a);
  const Real value =
      poly_derivative_eval(c, lambda1) / std::pow(lambda1, static_cast<Real>(d - 1));
  if (!(value > 0)) {
    throw Error(ErrorKind::NonDominantRoot, "lambda1 is not a strictly dominant root");
  }
  return value;
}

SpectralData spectral_data(const Matrix& a, Real tol, int max_iter) {
  PerronPair pp = perron(a, tol, max_iter);
  SpectralData out;
  out.top_eigenvalue = pp.eigenvalue;
  out.perron_direction = std::move(pp.direction);
  out.char_poly = char_poly(a);
  out.det_factor = det_factor_charpoly(a, out.top_eigenvalue);
  return out;
}

} // namespace lyap
