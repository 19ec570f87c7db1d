#include "lyap/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lyap/rng.hpp"

namespace lyap {

ProjectivePoint::ProjectivePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.empty() || coords_[0] != 1) {
    throw Error(ErrorKind::InvalidArgument, "chart point must have first coordinate 1");
  }
  for (Real v : coords_) {
    if (!(v > 0)) throw Error(ErrorKind::InvalidArgument, "chart point must be strictly positive");
  }
}

ProjectivePoint ProjectivePoint::from_raw(std::span<const Real> v) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, "empty vector");
  for (Real x : v) {
    if (!(x > 0)) throw Error(ErrorKind::InvalidArgument, "raw vector must be strictly positive");
  }
  Vector c(v.begin(), v.end());
  const Real head = c[0];
  for (Real& x : c) x /= head;
  c[0] = 1;
  return ProjectivePoint(std::move(c), Trusted{});
}

ProjectivePoint projective_action(const Matrix& a, const ProjectivePoint& x) {
  return ProjectivePoint::from_raw(a * x.coords());
}

ProjectivePoint fixed_point(const Matrix& a, Real tol, int max_iter) {
  return ProjectivePoint::from_raw(perron(a, tol, max_iter).direction);
}

Matrix jacobian(const Matrix& a, const ProjectivePoint& x, Real lambda) {
  const std::size_t d = a.dim();
  if (x.dim() != d) throw Error(ErrorKind::DimensionMismatch, "point and matrix sizes differ");
  if (d <= 1) return Matrix{};
  Matrix j(d - 1);
  for (std::size_t r = 0; r + 1 < d; ++r) {
    for (std::size_t c = 0; c + 1 < d; ++c) {
      j(r, c) = (a(r + 1, c + 1) - a(0, c + 1) * x[r + 1]) / lambda;
    }
  }
  return j;
}

Real det_factor_at(const Matrix& a, const ProjectivePoint& x, Real lambda) {
  Matrix m = jacobian(a, x, lambda);
  if (m.empty()) return 1;
  m *= -1;
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += 1;
  return determinant(m);
}

Real det_factor_jacobian(const Matrix& a, Real tol, int max_iter) {
  const PerronPair pp = perron(a, tol, max_iter);
  return det_factor_at(a, ProjectivePoint::from_raw(pp.direction), pp.eigenvalue);
}

Real hilbert_distance(std::span<const Real> x, std::span<const Real> y) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "hilbert_distance needs equal non-empty sizes");
  }
  Real hi = x[0] / y[0];
  Real lo = hi;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Real r = x[i] / y[i];
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return std::log1p((hi - lo) / lo);
}

Real hilbert_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  return hilbert_distance(x.coords(), y.coords());
}

Real angle_distance(std::span<const Real> x, std::span<const Real> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "angle_distance size mismatch");
  Real xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  const Real c2 = (xy * xy) / (xx * yy);
  return std::sqrt(std::max(Real(0), 1 - c2));
}

Real angle_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  return angle_distance(x.coords(), y.coords());
}

Real projective_diameter(const Matrix& a) {
  const std::size_t d = a.dim();
  Real best = 0;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) {
      // d_H between columns k and l
      Real hi = a(0, k) / a(0, l);
      Real lo = hi;
      for (std::size_t i = 1; i < d; ++i) {
        const Real r = a(i, k) / a(i, l);
        hi = std::max(hi, r);
        lo = std::min(lo, r);
      }
      best = std::max(best, std::log(hi / lo));
    }
  }
  return best;
}

ContractionReport birkhoff_coefficient(const Matrix& a) {
  ContractionReport rep;
  rep.delta = projective_diameter(a);
  rep.birkhoff = std::tanh(rep.delta / 4);
  rep.max_violation = -std::numeric_limits<Real>::infinity();
  return rep;
}

void record_contraction_sample(ContractionReport& rep, const Matrix& a, Real factor,
                               const ProjectivePoint& x, const ProjectivePoint& y) {
  const Real before = hilbert_distance(x, y);
  if (before == 0) {
    ++rep.samples_skipped;
    return;
  }
  const Real after = hilbert_distance(a * x.coords(), a * y.coords());
  const Real bound = factor * before;
  ++rep.samples_checked;
  rep.max_violation = std::max(rep.max_violation, after - bound);
  const Real ratio = bound > 0 ? after / bound
                               : (after > 0 ? std::numeric_limits<Real>::infinity() : Real(0));
  rep.max_ratio = std::max(rep.max_ratio, ratio);
}

ProjectivePoint random_chart_point(std::size_t dim, Engine& eng) {
  Vector c(dim, 1);
  for (std::size_t i = 1; i < dim; ++i) c[i] = std::exp(Real(6 * uniform01(eng) - 3));
  return ProjectivePoint(std::move(c));
}

ContractionReport birkhoff_coefficient(const Matrix& a, long samples, std::uint64_t seed) {
  ContractionReport rep = birkhoff_coefficient(a);
  Engine eng = make_stream(seed);
  for (long s = 0; s < samples; ++s) {
    const ProjectivePoint x = random_chart_point(a.dim(), eng);
    const ProjectivePoint y = random_chart_point(a.dim(), eng);
    record_contraction_sample(rep, a, rep.birkhoff, x, y);
  }
  return rep;
}

} // namespace lyap
