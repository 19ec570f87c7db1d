#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lyap/linalg.hpp"
#include "test_support.hpp"

using namespace lyap;
using lyap::testing::random_positive;

TEST_CASE("validate_positive") {
  CHECK_FALSE(validate_positive(Matrix{{2, 1}, {1, 1}}).has_value());

  auto zero = validate_positive(Matrix{{1, 0}, {0, 1}});
  REQUIRE(zero.has_value());
  CHECK(zero->kind == ErrorKind::NonPositiveEntry);
  CHECK(zero->row == 0);
  CHECK(zero->col == 1);

  auto singular = validate_positive(Matrix{{1, 1}, {1, 1}});
  REQUIRE(singular.has_value());
  CHECK(singular->kind == ErrorKind::SingularMatrix);

  CHECK_THROWS_AS(require_positive(Matrix{{1, -1}, {1, 1}}), Error);
}

TEST_CASE("determinant and solve") {
  CHECK(determinant(Matrix{{2, 1}, {1, 1}}) == doctest::Approx(1.0));
  CHECK(determinant(Matrix{{0, 2}, {3, 1}}) == doctest::Approx(-6.0));
  const Matrix a{{4, 1, 2}, {1, 5, 1}, {2, 1, 6}};
  const Vector x = solve(a, {1, 2, 3});
  const Vector back = a * std::span<const Real>(x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(static_cast<double>(back[i]) == doctest::Approx(i + 1.0));
  CHECK_THROWS_AS(solve(Matrix{{1, 1}, {1, 1}}, {1, 2}), Error);
}

TEST_CASE("cycle_product reads right to left") {
  const std::vector<Matrix> m{Matrix{{2, 1}, {1, 1}}, Matrix{{1, 1}, {1, 2}}};
  CHECK(cycle_product(Word{0, 1}, m) == Matrix{{3, 2}, {4, 3}});
  CHECK(cycle_product(Word{0}, m) == m[0]);
  CHECK(cycle_product(Word{0, 0}, m) == Matrix{{5, 3}, {3, 2}});

  CHECK_THROWS_AS(cycle_product(Word{0, 2}, m), Error);
  try {
    cycle_product(Word{5}, m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("scaled_cycle_product matches the plain product") {
  const std::vector<Matrix> m{Matrix{{2, 1}, {1, 1}}, Matrix{{1, 1}, {1, 2}}};
  const Word w{0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0};
  const Matrix plain = cycle_product(w, m);
  for (int every : {1, 3, 8, 100}) {
    const ScaledMatrix s = scaled_cycle_product(w, m, every);
    CHECK(static_cast<double>(s.matrix.max_entry()) == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const Real rebuilt = s.matrix(i, j) * std::exp(s.log_scale);
        CHECK(static_cast<double>(rebuilt / plain(i, j)) == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }

  // entries of M^3000 are ~1e1254, past double range
  const Word longw(3000, 0);
  const ScaledMatrix s = scaled_cycle_product(longw, m);
  const Real lambda = (3 + std::sqrt(Real(5))) / 2;
  CHECK(std::isfinite(s.log_scale));
  const PerronPair pp = perron(s.matrix);
  CHECK(static_cast<double>((std::log(pp.eigenvalue) + s.log_scale) / (3000 * std::log(lambda))) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("perron on closed-form 2x2 cases") {
  const Real r5 = std::sqrt(Real(5));
  PerronPair p = perron(Matrix{{2, 1}, {1, 1}});
  CHECK(std::abs(p.eigenvalue - (3 + r5) / 2) < 1e-15);
  CHECK(p.direction[0] == 1);
  CHECK(std::abs(p.direction[1] - (r5 - 1) / 2) < 1e-15);

  p = perron(Matrix{{2, 1}, {1, 2}});
  CHECK(std::abs(p.eigenvalue - 3) < 1e-15);
  CHECK(std::abs(p.direction[1] - 1) < 1e-15);

  p = perron(Matrix{{3, 2}, {4, 3}});
  CHECK(std::abs(p.eigenvalue - (3 + 2 * std::sqrt(Real(2)))) < 1e-14);

  p = perron(Matrix{{5}});
  CHECK(p.eigenvalue == 5);

  CHECK_THROWS_AS(perron(Matrix{{1, 1}, {1, 1.001L}}, 1e-30L, 2), Error);
}

TEST_CASE("char_poly") {
  Vector c = char_poly(Matrix{{2, 1}, {1, 1}});
  REQUIRE(c.size() == 3);
  CHECK(c[2] == 1);
  CHECK(std::abs(c[1] + 3) < 1e-15);
  CHECK(std::abs(c[0] - 1) < 1e-15);

  c = char_poly(Matrix{{2, 1}, {1, 2}});
  CHECK(std::abs(c[1] + 4) < 1e-15);
  CHECK(std::abs(c[0] - 3) < 1e-15);

  c = char_poly(Matrix{{7}});
  CHECK(c[1] == 1);
  CHECK(c[0] == -7);

  // c_0 = (-1)^d det A, c_{d-1} = -tr A
  std::mt19937_64 gen(7);
  for (int d = 2; d <= 6; ++d) {
    const Matrix a = random_positive(gen, d);
    c = char_poly(a);
    const Real sign = d % 2 == 0 ? 1 : -1;
    CHECK(static_cast<double>(c[0] / (sign * determinant(a))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(static_cast<double>(c[d - 1] / -a.trace()) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("det_factor_charpoly closed forms") {
  const Real r5 = std::sqrt(Real(5));
  const Real l1 = (3 + r5) / 2;
  CHECK(std::abs(det_factor_charpoly(Matrix{{2, 1}, {1, 1}}, l1) - r5 / l1) < 1e-15);
  CHECK(det_factor_charpoly(Matrix{{5}}, 5) == 1);
  const Real r2 = std::sqrt(Real(2));
  const Real expected = 1 - (3 - 2 * r2) / (3 + 2 * r2);
  CHECK(std::abs(det_factor_charpoly(Matrix{{3, 2}, {4, 3}}, 3 + 2 * r2) - expected) < 1e-15);
  CHECK(static_cast<double>(expected) == doctest::Approx(0.9705627485).epsilon(1e-10));

  // a negative subdominant eigenvalue pushes the factor above 1:
  // [[1,2],[2,1]] has spectrum {3, -1}
  CHECK(std::abs(det_factor_charpoly(Matrix{{1, 2}, {2, 1}}, 3) - Real(4) / 3) < 1e-15);

  // the smaller root is not dominant
  CHECK_THROWS_AS(det_factor_charpoly(Matrix{{2, 1}, {1, 1}}, (3 - r5) / 2), Error);
}

TEST_CASE("spectral properties on random positive matrices") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 6;
    const Matrix a = random_positive(gen, d);
    const PerronPair p = perron(a);

    // Perron residual
    const Vector as = a * std::span<const Real>(p.direction);
    Real resid = 0;
    for (int i = 0; i < d; ++i) resid = std::max(resid, std::abs(as[i] - p.eigenvalue * p.direction[i]));
    CHECK(resid <= 10 * kDefaultPerronTol * a.norm_inf());

    // characteristic polynomial vanishes at the Perron root
    const Vector c = char_poly(a);
    CHECK(std::abs(poly_eval(c, p.eigenvalue)) <= 1e-8 * std::pow(p.eigenvalue, Real(d)));

    // the determinant factor is positive: lambda_1 strictly dominates
    CHECK(det_factor_charpoly(a, p.eigenvalue) > 0);
  }
}

TEST_CASE("rotated words have the same characteristic polynomial") {
  std::mt19937_64 gen(99);
  std::vector<Matrix> m;
  for (int i = 0; i < 3; ++i) m.push_back(random_positive(gen, 3));
  const Word w{0, 2, 1, 1, 0, 2};
  const Vector base = char_poly(cycle_product(w, m));
  Word r = w;
  for (std::size_t shift = 1; shift < w.size(); ++shift) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    const Vector c = char_poly(cycle_product(r, m));
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::abs(c[i] - base[i]) <= 1e-9 * std::abs(base[i]));
    }
  }
}
