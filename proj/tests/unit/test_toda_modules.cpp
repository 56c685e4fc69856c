#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/filtration_kit.hpp"
#include "toda/toda_modules.hpp"

using namespace toda;

namespace {

QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }

// All coroots as the orbit of the simple coroots under s_i(xi)_i -= sum_j a_ji xi_j.
std::vector<QVec> coroots(const std::vector<std::vector<long>>& a) {
  std::size_t r = a.size();
  std::vector<QVec> out;
  for (std::size_t i = 0; i < r; ++i) {
    QVec e(r);
    e[i] = Rational(1);
    out.push_back(e);
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < r; ++i) {
      QVec x = out[k];
      Rational s;
      for (std::size_t j = 0; j < r; ++j) s += Rational(a[j][i]) * out[k][j];
      x[i] -= s;
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  return out;
}

bool integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
}

struct Expected {
  bool non_integral;
  bool regular;
};

Expected classify_by_hand(const std::string& type, const QVec& nu) {
  auto a = oracle::cartan(type);
  Expected e{true, true};
  for (const auto& c : coroots(a))
    if (dot(nu, c).is_integer()) e.non_integral = false;
  auto orbit = oracle::weyl_orbit(a, nu);
  if (orbit.size() != oracle::weyl_order(type)) e.regular = false;
  for (const auto& p : orbit) {
    if (p == nu) continue;
    QVec diff = p;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= nu[i];
    if (integral(diff)) e.regular = false;
  }
  return e;
}

}  // namespace

TEST_CASE("A1 classification examples") {
  auto d = RootDatum::build("A1");
  auto third = classify_parameter(d, qv({Rational(1, 3)}));
  CHECK(third.non_integral);
  CHECK(third.regular);
  auto half = classify_parameter(d, qv({Rational(1, 2)}));
  CHECK(half.non_integral);
  CHECK_FALSE(half.regular);
  auto one = classify_parameter(d, qv({Rational(1)}));
  CHECK_FALSE(one.non_integral);
  CHECK_FALSE(one.regular);
  CHECK_THROWS_AS(classify_parameter(d, qv({Rational(1), Rational(2)})), DimensionMismatch);

  CHECK(same_block(third, classify_parameter(d, qv({Rational(4, 3)}))));
  CHECK(same_block(third, classify_parameter(d, qv({Rational(2, 3)}))));
  CHECK_FALSE(same_block(third, classify_parameter(d, qv({Rational(1, 5)}))));
  CHECK(third.block_id == classify_parameter(d, qv({Rational(-5, 3)})).block_id);
}

TEST_CASE("classification agrees with the hand oracle on random parameters") {
  oracle::Rng rng(101);
  for (const std::string t : {"A1", "A2", "B2", "C2", "G2", "A3"}) {
    CAPTURE(t);
    auto d = RootDatum::build(t);
    for (int trial = 0; trial < 200; ++trial) {
      QVec nu(d->dim());
      for (auto& v : nu) v = rng.rational(12, 6);
      auto c = classify_parameter(d, nu);
      auto e = classify_by_hand(t, nu);
      CHECK(c.non_integral == e.non_integral);
      CHECK(c.regular == e.regular);
      if (c.regular) CHECK(c.non_integral);
    }
  }
}

TEST_CASE("weight families") {
  auto d = RootDatum::build("A1");
  auto m = hc_weight_module(classify_parameter(d, qv({Rational(1, 3)})));
  REQUIRE(m.families() == 2);
  std::vector<QVec> bases{m.family_base(0), m.family_base(1)};
  std::sort(bases.begin(), bases.end());
  CHECK(bases == std::vector<QVec>{qv({Rational(-1, 3)}), qv({Rational(1, 3)})});
  CHECK_FALSE(m.supports_meet(0, 1));

  auto h = hc_weight_module(classify_parameter(d, qv({Rational(1, 2)})));
  CHECK(h.supports_meet(0, 1));

  auto t1 = RootDatum::build("T1");
  CHECK(hc_weight_module(classify_parameter(t1, qv({Rational(2, 7)}))).families() == 1);

  CHECK_THROWS_AS(hc_weight_module(classify_parameter(d, qv({Rational(1)}))), IntegralParameter);

  HCWeightModule::Line l{0, {2}};
  CHECK(m.weight(l) == QVec{m.family_base(0)[0] + Rational(2)});
  CHECK(m.xi_eigenvalue(l, qv({Rational(1)})) == m.weight(l)[0]);
}

TEST_CASE("simplicity certificates") {
  auto d = RootDatum::build("A1");
  auto c = simplicity_certificate(classify_parameter(d, qv({Rational(1, 3)})));
  CHECK(c.certified);
  CHECK(c.consistent());
  auto n = simplicity_certificate(classify_parameter(d, qv({Rational(1, 2)})));
  CHECK_FALSE(n.certified);
  CHECK(n.consistent());
  REQUIRE(n.witness.has_value());
  CHECK((*n.witness)[0].abs() == Rational(1, 2));

  auto a2 = RootDatum::build("A2");
  CHECK(simplicity_certificate(classify_parameter(a2, qv({Rational(1, 5), Rational(1, 7)}))).certified);

  oracle::Rng rng(77);
  for (const auto& t : {"A1", "A2", "B2", "G2"}) {
    auto dd = RootDatum::build(t);
    auto inv = fundamental_invariants(*dd);
    int tested = 0;
    while (tested < 20) {
      QVec nu(dd->dim());
      for (auto& v : nu) v = rng.rational(6, 6);
      auto ch = classify_parameter(dd, nu);
      if (!ch.non_integral) continue;
      ++tested;
      auto cert = simplicity_certificate(ch);
      CHECK(cert.certified == ch.regular);
      CHECK(check_weight_model(hc_weight_module(ch), 1, inv.polys).ok());
    }
  }
}

TEST_CASE("scalars of invariant denominators") {
  auto d = RootDatum::build("A1");
  auto nu = classify_parameter(d, qv({Rational(1, 3)}));
  FactoredElement u;
  u.factors = {LevelFactor{{1}, Rational(0)}, LevelFactor{{-1}, Rational(0)}};
  CHECK(scalar_of_ore_denominator(u, nu) == Rational(-1, 9));
  CHECK(scalar_of_ore_denominator(FactoredElement{}, nu) == Rational(1));
  FactoredElement v;
  v.factors = {LevelFactor{{1}, Rational(1)}, LevelFactor{{-1}, Rational(1)}};
  CHECK(scalar_of_ore_denominator(v, nu) == Rational(8, 9));
  FactoredElement w;
  w.factors = {LevelFactor{{1}, Rational(0)}};
  CHECK_THROWS_AS(scalar_of_ore_denominator(w, nu), NotWeylInvariant);
  FactoredElement z;
  z.factors = {LevelFactor{{1}, Rational(1, 3)}, LevelFactor{{-1}, Rational(1, 3)}};
  CHECK_THROWS_AS(scalar_of_ore_denominator(z, nu), ZeroScalar);
}

TEST_CASE("bi-invariant degree") {
  auto a1 = RootDatum::build("A1");
  CHECK(kazhdan_degree_bi_invariant(*a1, {1}) == -2);
  CHECK(kazhdan_degree_bi_invariant(*a1, {0}) == 0);
  auto a2 = RootDatum::build("A2");
  CHECK(kazhdan_degree_bi_invariant(*a2, {1, 1}) == -8);
  CHECK_THROWS_AS(kazhdan_degree_bi_invariant(*a1, {-1}), NotDominant);
}
