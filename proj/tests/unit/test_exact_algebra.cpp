#include <doctest.h>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/exact_algebra.hpp"

using namespace toda;

namespace {

// Two variables: h (index 0) and hbar (index 1).
MultiPoly h() { return MultiPoly::variable(2, 0); }
MultiPoly hb() { return MultiPoly::variable(2, 1); }

MultiPoly random_poly(oracle::Rng& rng, std::size_t nvars, unsigned max_deg) {
  MultiPoly p(nvars);
  long nterms = rng.integer(1, 4);
  for (long t = 0; t < nterms; ++t) {
    Exponents e(nvars, 0);
    unsigned budget = static_cast<unsigned>(rng.integer(0, max_deg));
    for (unsigned k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<long>(nvars) - 1))];
    p.add_term(e, rng.rational(5, 3));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("-2/4").str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("bogus"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
  CHECK(Rational(2, 3).inverse() == Rational(3, 2));
  CHECK(parse_qvec("1/2,-3") == QVec{Rational(1, 2), Rational(-3)});
}

TEST_CASE("exact division examples") {
  CHECK(exact_divide(h() * h() - hb() * hb(), h() - hb()) == h() + hb());
  // (s(f) - f) / h with f = h and s: h -> -h
  CHECK(exact_divide(-h() - h(), h()) == MultiPoly::constant(2, -2));
  CHECK((h() * MultiPoly(2)).is_zero());
  CHECK_THROWS_AS(exact_divide(h() + hb(), h()), NonDivisible);
  CHECK_FALSE(try_divide(h() * h() + hb(), h()).has_value());
}

TEST_CASE("polynomial ring laws hold pointwise") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    MultiPoly p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3);
    QVec pt{rng.rational(7, 5), rng.rational(7, 5), rng.rational(7, 5)};
    CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    CHECK(p * q == q * p);
    if (!q.is_zero()) CHECK(exact_divide(p * q, q) == p);
    CHECK(p.pow(2) == p * p);
  }
}

TEST_CASE("homogeneous parts and degrees") {
  MultiPoly p = h() * h() * hb() + h() + MultiPoly::constant(2, 3);
  CHECK(p.total_degree() == 3);
  CHECK_FALSE(p.is_homogeneous());
  auto parts = p.homogeneous_parts();
  CHECK(parts.size() == 3);
  MultiPoly sum(2);
  for (const auto& [d, q] : parts) {
    CHECK(q.is_homogeneous());
    sum += q;
  }
  CHECK(sum == p);
  CHECK(p.degree_in(0) == 2);
  CHECK(p.constant_term() == Rational(3));
}

TEST_CASE("fraction examples") {
  OreFactor a{{1}, 0};        // h
  OreFactor a_minus{{1}, 1};  // h - hbar
  auto inv_a = OreFraction::inverse_of(a, 2);
  OreFraction r = inv_a * OreFraction(h() - hb());
  CHECK(r.numerator() == h() - hb());
  CHECK(r.denominator() == std::vector<OreFactor>{a});

  OreFraction x = OreFraction::make(h(), {a_minus});
  OreFraction y = OreFraction::make(h() - hb(), {a});
  CHECK(x * y == OreFraction(MultiPoly::constant(2, 1)));

  OreFraction two = OreFraction::make(MultiPoly::constant(2, 2), {a});
  OreFraction three = OreFraction::make(MultiPoly::constant(2, 3), {a});
  OreFraction six = two * three;
  CHECK(six.scale() == Rational(6));
  CHECK(six.denominator() == std::vector<OreFactor>{a, a});

  // cancellation of a common factor
  CHECK(OreFraction::make(h() * (h() - hb()), {a_minus}).as_polynomial() == h());
}

TEST_CASE("fraction field laws") {
  oracle::Rng rng(5);
  std::vector<OreFactor> pool{{{1}, 0}, {{1}, 1}, {{1}, -2}};
  for (int trial = 0; trial < 60; ++trial) {
    auto rf = [&] {
      std::vector<OreFactor> den;
      for (long k = rng.integer(0, 2); k > 0; --k) den.push_back(pool[static_cast<std::size_t>(rng.integer(0, 2))]);
      return OreFraction::make(random_poly(rng, 2, 2), den);
    };
    OreFraction f = rf(), g = rf(), k = rf();
    CHECK((f + g) * k == f * k + g * k);
    CHECK(f * g == g * f);
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("factor normalization") {
  auto s = normalize_factor({-2}, -2);  // -2h + 2hbar = -2 (h - hbar)
  CHECK(s.scale == Rational(-2));
  CHECK(s.factor.coroot == IVec{1});
  CHECK(s.factor.shift == 1);
  CHECK_THROWS_AS(normalize_factor({0}, 1), NotOreFactor);
  CHECK_THROWS_AS(normalize_factor({2}, 1), NotOreFactor);
}

TEST_CASE("linear algebra") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = static_cast<std::size_t>(rng.integer(1, 5)), cols = static_cast<std::size_t>(rng.integer(1, 5));
    QMatrix m(rows, QVec(cols));
    for (auto& r : m)
      for (auto& v : r) v = Rational(rng.integer(-2, 2));
    auto ns = nullspace(m, cols);
    CHECK(ns.size() + matrix_rank(m, cols) == cols);
    for (const auto& v : ns)
      for (const auto& r : m) CHECK(dot(r, v).is_zero());
    QVec x(cols);
    for (auto& v : x) v = rng.rational(4, 3);
    QVec b;
    for (const auto& r : m) b.push_back(dot(r, x));
    auto sol = solve_linear(m, b, cols);
    REQUIRE(sol.has_value());
    for (std::size_t i = 0; i < rows; ++i) CHECK(dot(m[i], *sol) == b[i]);
  }
  QMatrix singular{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK_FALSE(solve_linear(singular, {Rational(0), Rational(1)}, 2).has_value());
}
