#ifndef LYAP_LINALG_HPP
#define LYAP_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "lyap/error.hpp"
#include "lyap/real.hpp"

namespace lyap {

using Vector = std::vector<Real>;

/// Zero-based symbol sequence. Reading order of products is right to left:
/// the first symbol is applied first.
using Word = std::vector<int>;

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim, Real fill = 0);
  Matrix(std::initializer_list<std::initializer_list<Real>> rows);

  static Matrix identity(std::size_t dim);
  /// Throws DimensionMismatch unless `rows` is square and non-empty.
  static Matrix from_rows(const std::vector<std::vector<Real>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  Real operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const Real> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const Real> data() const noexcept { return data_; }

  Real max_entry() const;
  Real min_entry() const;
  Real norm_inf() const;
  Real trace() const;

  Matrix& operator*=(Real c);
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Real> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Real c, Matrix a);
Vector operator*(const Matrix& a, std::span<const Real> x);

/// Determinant by Gaussian elimination with partial pivoting.
Real determinant(const Matrix& a);

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix on a zero pivot.
Vector solve(Matrix a, Vector b);

/// First violated model precondition, or nullopt when every entry is
/// strictly positive and the matrix is numerically non-singular.
std::optional<Issue> validate_positive(const Matrix& a);

/// Throwing form of validate_positive.
void require_positive(const Matrix& a);

/// M[w_n] * ... * M[w_1].
Matrix cycle_product(std::span<const int> word, std::span<const Matrix> matrices);

/// A product held as `exp(log_scale) * matrix`, with `matrix` normalized so
/// that its largest entry is 1.
struct ScaledMatrix {
  Matrix matrix;
  Real log_scale = 0;
};

/// Overflow-safe cycle_product: pulls the largest entry out every
/// `renorm_every` factors and accumulates its logarithm.
ScaledMatrix scaled_cycle_product(std::span<const int> word,
                                  std::span<const Matrix> matrices,
                                  int renorm_every = 8);

struct PerronPair {
  Real eigenvalue = 0;
  Vector direction;  // first coordinate exactly 1
  int iterations = 0;
};

/// Perron root and direction of a strictly positive matrix by power
/// iteration from the all-ones vector. Stops once successive iterates are
/// within `tol` in the Hilbert metric.
PerronPair perron(const Matrix& a, Real tol = kDefaultPerronTol,
                  int max_iter = kDefaultPerronMaxIter);

/// Coefficients c_0..c_d of the monic characteristic polynomial
/// det(lambda I - A), lowest degree first (Faddeev-LeVerrier).
Vector char_poly(const Matrix& a);

/// Horner evaluation, coefficients lowest degree first.
Real poly_eval(std::span<const Real> coeffs, Real x);
Real poly_derivative_eval(std::span<const Real> coeffs, Real x);

/// prod_{i>=2} (1 - lambda_i / lambda_1) evaluated as
/// chi'(lambda_1) / lambda_1^(d-1). Equals 1 for d = 1.
/// Throws NonDominantRoot when the value is not positive.
Real det_factor_charpoly(const Matrix& a, Real lambda1);

struct SpectralData {
  Real top_eigenvalue = 0;
  Vector perron_direction;
  Vector char_poly;
  Real det_factor = 1;
};

SpectralData spectral_data(const Matrix& a, Real tol = kDefaultPerronTol,
                           int max_iter = kDefaultPerronMaxIter);

} // namespace lyap

#endif
