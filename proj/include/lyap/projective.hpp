#ifndef LYAP_PROJECTIVE_HPP
#define LYAP_PROJECTIVE_HPP

#include <cstdint>
#include <span>

#include "lyap/linalg.hpp"
#include "lyap/rng.hpp"

namespace lyap {

/// Point of the positive projective chart: first coordinate exactly 1, all
/// coordinates strictly positive.
class ProjectivePoint {
 public:
  /// Throws InvalidArgument if `coords` is not already a chart point.
  explicit ProjectivePoint(Vector coords);

  /// Normalizes a strictly positive raw vector by its first coordinate.
  static ProjectivePoint from_raw(std::span<const Real> v);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const Real> coords() const noexcept { return coords_; }
  Real operator[](std::size_t i) const { return coords_[i]; }

 private:
  struct Trusted {};
  ProjectivePoint(Vector coords, Trusted) : coords_(std::move(coords)) {}
  Vector coords_;
};

/// x -> Ax / (Ax)_1.
ProjectivePoint projective_action(const Matrix& a, const ProjectivePoint& x);

/// Fixed point of the projective action, i.e. the normalized Perron direction.
ProjectivePoint fixed_point(const Matrix& a, Real tol = kDefaultPerronTol,
                            int max_iter = kDefaultPerronMaxIter);

/// Jacobian of the projective action in the chart coordinates x_2..x_d,
/// closed form valid at the fixed point x with lambda = (Ax)_1:
///   J(i,j) = (a(i+1,j+1) - a(0,j+1) x(i+1)) / lambda.
/// Returns the empty matrix when d = 1.
Matrix jacobian(const Matrix& a, const ProjectivePoint& x, Real lambda);

/// det(I - J) for the closed-form Jacobian at (x, lambda); 1 when d = 1.
Real det_factor_at(const Matrix& a, const ProjectivePoint& x, Real lambda);

/// det(I - J) at the Perron fixed point of `a`.
Real det_factor_jacobian(const Matrix& a, Real tol = kDefaultPerronTol,
                         int max_iter = kDefaultPerronMaxIter);

/// Hilbert projective metric log(max_i(x_i/y_i) / min_i(x_i/y_i)).
Real hilbert_distance(const ProjectivePoint& x, const ProjectivePoint& y);
/// Same metric on raw strictly positive vectors; invariant under positive
/// rescaling of either argument.
Real hilbert_distance(std::span<const Real> x, std::span<const Real> y);

/// |sin| of the angle between two non-zero vectors.
Real angle_distance(std::span<const Real> x, std::span<const Real> y);
Real angle_distance(const ProjectivePoint& x, const ProjectivePoint& y);

struct ContractionReport {
  Real delta = 0;              // projective diameter of the image
  Real birkhoff = 0;           // tanh(delta / 4)
  long samples_checked = 0;
  long samples_skipped = 0;    // pairs at zero distance
  Real max_ratio = 0;          // max d(image) / (bound * d(source))
  Real max_violation = 0;      // max d(image) - bound * d(source); <= 0 when it holds
};

/// Delta(A) = max over column pairs of d_H(A e_k, A e_l).
Real projective_diameter(const Matrix& a);

ContractionReport birkhoff_coefficient(const Matrix& a);

/// Additionally checks d_H(Ax, Ay) <= k(A) d_H(x, y) on `samples` random
/// chart pairs drawn from stream `seed`.
ContractionReport birkhoff_coefficient(const Matrix& a, long samples,
                                       std::uint64_t seed);

/// Checks one pair against d_H(Ax, Ay) <= factor * d_H(x, y) and folds the
/// outcome into `rep`. Pairs at zero distance are counted as skipped.
void record_contraction_sample(ContractionReport& rep, const Matrix& a, Real factor,
                               const ProjectivePoint& x, const ProjectivePoint& y);

/// Chart point with coordinates 2..d log-uniform in [e^-3, e^3].
ProjectivePoint random_chart_point(std::size_t dim, Engine& eng);

} // namespace lyap

#endif
