#include <doctest.h>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/kostant_slice.hpp"

using namespace toda;

namespace {

QMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  QMatrix m;
  for (const auto& r : rows) {
    QVec v;
    for (long x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return m;
}

// Plain triple loop, kept apart from the library product.
QMatrix product(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.size(), QVec(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

QMatrix random_matrix(oracle::Rng& rng, std::size_t n) {
  QMatrix m(n, QVec(n));
  for (auto& r : m)
    for (auto& v : r) v = Rational(rng.integer(-4, 4));
  return m;
}

}  // namespace

TEST_CASE("slice examples") {
  auto p = slice_point(MatKind::sl, 3, QVec{Rational(-2), Rational(-5)});
  CHECK(p.matrix == mat({{0, 1, 5}, {1, 0, 1}, {0, 1, 0}}));
  CHECK(char_poly(p.matrix) == QVec{Rational(0), Rational(-2), Rational(-5)});
  CHECK(in_slice(MatKind::sl, p.matrix));
  CHECK(matrix_str(mat({{1, 2}, {3, 4}})) == "[[1,2],[3,4]]");

  auto same = slice_point(MatKind::sl, 3, QVec{Rational(0), Rational(-2), Rational(-5)});
  CHECK(same.matrix == p.matrix);
  CHECK_THROWS_AS(slice_point(MatKind::sl, 3, QVec{Rational(1), Rational(-2), Rational(-5)}), BadCoefficients);
  CHECK_THROWS_AS(slice_point(MatKind::sl, 3, QVec{Rational(1)}), BadCoefficients);

  CHECK(slice_dimension(MatKind::sl, 4) == 3);
  CHECK(slice_dimension(MatKind::gl, 4) == 4);
  CHECK_FALSE(in_slice(MatKind::sl, identity_matrix(3)));
  CHECK(principal_f(3) == mat({{0, 2, 0}, {0, 0, 2}, {0, 0, 0}}));
}

TEST_CASE("characteristic polynomial matches cofactor expansion") {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    auto m = random_matrix(rng, n);
    CHECK(char_poly(m) == oracle::char_poly_small(m));
    Rational det = char_poly(m).back() * Rational(n % 2 ? -1 : 1);
    CHECK(determinant(m) == det);
  }
}

TEST_CASE("slice points realize every characteristic polynomial") {
  oracle::Rng rng(73);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      QVec c(n);
      for (auto& v : c) v = rng.rational(6, 3);
      auto g = slice_point(MatKind::gl, n, c);
      CHECK(char_poly(g.matrix) == c);
      CHECK(in_slice(MatKind::gl, g.matrix));
      c[0] = Rational(0);
      auto s = slice_point(MatKind::sl, n, c);
      CHECK(char_poly(s.matrix) == c);
      CHECK(trace(s.matrix).is_zero());
    }
  // e and f form part of an sl2 triple: [e, f] is diagonal.
  for (std::size_t n = 2; n <= 5; ++n) {
    auto e = principal_e(n), f = principal_f(n);
    auto comm = mat_add(product(e, f), mat_scale(product(f, e), Rational(-1)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(comm[i][j].is_zero());
  }
}

TEST_CASE("inverse and big cell") {
  oracle::Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 3);
    if (determinant(m).is_zero()) {
      CHECK_THROWS_AS(mat_inverse(m), NotInvertible);
      continue;
    }
    CHECK(product(m, mat_inverse(m)) == identity_matrix(3));
  }
  CHECK(big_cell_test(w0_representative(3)));
  CHECK(determinant(w0_representative(4)) == Rational(1));
  CHECK_FALSE(big_cell_test(identity_matrix(2)));
  CHECK(big_cell_test(mat({{1, 1}, {1, 0}})));
  CHECK_THROWS_AS(big_cell_test(mat({{1, 1}, {1, 1}})), NotInvertible);
}

TEST_CASE("centralizer components meet the big cell") {
  auto sl2 = fiber_vs_big_cell(QVec{Rational(0)}, parse_group("SL2"));
  CHECK(sl2.components == 2);
  CHECK(sl2.all_meet_big_cell);
  REQUIRE(sl2.witnesses.size() == 2);
  REQUIRE(sl2.witnesses[0].element.has_value());
  REQUIRE(sl2.witnesses[1].element.has_value());
  CHECK(*sl2.witnesses[1].element == mat_scale(*sl2.witnesses[0].element, Rational(-1)));
  for (const auto& w : sl2.witnesses) {
    CHECK(w.commutes);
    CHECK(w.in_group);
    CHECK(w.in_big_cell);
    CHECK(product(w.u, sl2.point.matrix) == product(sl2.point.matrix, w.u));
    CHECK(big_cell_test(w.u));
  }

  CHECK(fiber_vs_big_cell(QVec{Rational(-1)}, parse_group("SL2")).components == 1);
  CHECK(fiber_vs_big_cell(QVec{Rational(0), Rational(0)}, parse_group("GL2")).components == 1);
  auto sl3 = fiber_vs_big_cell(QVec{Rational(0), Rational(0)}, parse_group("SL3"));
  CHECK(sl3.components == 3);
  CHECK(sl3.all_meet_big_cell);
  CHECK(fiber_vs_big_cell(QVec{Rational(-3), Rational(2)}, parse_group("SL3")).components == 1);

  CHECK(parse_group("GL4").str() == "GL4");
  CHECK_THROWS_AS(parse_group("SL7"), UnsupportedGroup);
  CHECK_THROWS_AS(parse_group("Sp4"), UnsupportedGroup);
}

TEST_CASE("big-cell parametrization") {
  auto p = big_cell_pair(QVec{Rational(2), Rational(1, 2)}, QVec{Rational(1), Rational(-1)});
  CHECK(p.ok());
  CHECK(product(p.g_normalized, p.y) == product(p.y, p.g_normalized));
  CHECK_THROWS_AS(big_cell_pair(QVec{Rational(2), Rational(1)}, QVec{Rational(0), Rational(0)}), BadCoefficients);
  for (std::size_t n : {2u, 3u}) {
    auto batch = big_cell_samples(n, 30, 5);
    CHECK(batch.samples == 30);
    CHECK(batch.passed == 30);
    CHECK(batch.failures.empty());
  }
}
