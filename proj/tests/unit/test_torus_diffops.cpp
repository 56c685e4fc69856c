#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/torus_diffops.hpp"

using namespace toda;

namespace {

MultiPoly var(const DatumPtr& d, std::size_t i) { return MultiPoly::variable(d->nvars(), i); }

DtElt random_classical(const DatumPtr& d, oracle::Rng& rng) {
  auto monos = monomials_up_to(d->nvars() - 1, 2);
  DtElt x(d, DtLevel::classical);
  for (long k = rng.integer(1, 3); k > 0; --k) {
    IVec mu(d->dim());
    for (auto& m : mu) m = rng.integer(-1, 1);
    Exponents e = monos[static_cast<std::size_t>(rng.integer(0, static_cast<long>(monos.size()) - 1))].leading_exponents();
    e.push_back(0);
    x += DtElt::poly(d, MultiPoly::monomial(e, Rational(rng.integer(-3, 3))), DtLevel::classical) *
         DtElt::exp(d, mu, DtLevel::classical);
  }
  return x;
}

// f e^mu sends the delta function at lambda to f(lambda + mu) times the delta
// function at lambda + mu.
using LatticeFunction = std::map<QVec, Rational>;

LatticeFunction act_on_lattice(const DtElt& x, const LatticeFunction& v) {
  LatticeFunction out;
  for (const auto& [lam, c] : v)
    for (const auto& [mu, f] : x.terms()) {
      QVec target = lam;
      for (std::size_t i = 0; i < mu.size(); ++i) target[i] += Rational(mu[i]);
      QVec pt = target;
      pt.push_back(Rational(1));
      Rational val = c * f.evaluate(pt);
      if (val.is_zero()) continue;
      out[target] += val;
      if (out[target].is_zero()) out.erase(target);
    }
  return out;
}

}  // namespace

TEST_CASE("commutation and group-like elements in A1") {
  auto d = RootDatum::build("A1");
  auto a = DtElt::poly(d, var(d, 0));
  auto e = DtElt::exp(d, {1});
  auto hb = DtElt::poly(d, var(d, 1));
  CHECK(a * e - e * a == e * hb);
  CHECK(e * DtElt::exp(d, {-1}) == DtElt::one(d));
  CHECK(a * a == DtElt::poly(d, var(d, 0) * var(d, 0)));
  CHECK_THROWS_AS(DtElt::poly(d, var(d, 1), DtLevel::classical), LevelMismatch);
}

TEST_CASE("products agree with the lattice-function representation") {
  oracle::Rng rng(31);
  for (const auto& t : {"A1", "A2", "B2", "A1xT1"}) {
    auto d = RootDatum::build(t);
    for (int trial = 0; trial < 25; ++trial) {
      DtElt x = random_classical(d, rng), y = random_classical(d, rng);
      QVec lam(d->dim());
      for (auto& v : lam) v = rng.rational(5, 3);
      LatticeFunction delta;
      delta[lam] = Rational(1);
      CHECK(act_on_lattice(x * y, delta) == act_on_lattice(x, act_on_lattice(y, delta)));
      DtElt z = random_classical(d, rng);
      CHECK((x * y) * z == x * (y * z));
    }
  }
}

TEST_CASE("embedding into the nil-DAHA ambient") {
  auto d = RootDatum::build("A1");
  auto a = DtElt::poly(d, var(d, 0));
  auto e = DtElt::exp(d, {1});
  DahaElt img_e(d);
  img_e.add_term(d->translation({-1}), OreFraction(MultiPoly::constant(2, 1)));
  CHECK(dt_embed_daha(e) == img_e);
  CHECK(dt_embed_daha(a) == daha_poly(d, var(d, 0)));
  CHECK(dt_embed_daha(a * e - e * a) == dt_embed_daha(a) * dt_embed_daha(e) - dt_embed_daha(e) * dt_embed_daha(a));
  CHECK(dt_embed_daha(a * e - e * a) == dt_embed_daha(e * DtElt::poly(d, var(d, 1))));

  oracle::Rng rng(8);
  auto d2 = RootDatum::build("B2");
  for (int trial = 0; trial < 15; ++trial) {
    DtElt x = random_classical(d2, rng), y = random_classical(d2, rng);
    CHECK(dt_embed_daha_classical(x * y) == dt_embed_daha_classical(x) * dt_embed_daha_classical(y));
  }
}

TEST_CASE("Weyl invariants") {
  auto d = RootDatum::build("A1");
  auto sym = DtElt::exp(d, {1}) + DtElt::exp(d, {-1});
  CHECK(dt_weyl_invariants(sym).invariant);
  auto a = DtElt::poly(d, var(d, 0));
  auto inv = dt_weyl_invariants(a);
  CHECK_FALSE(inv.invariant);
  CHECK(inv.average.is_zero());
  CHECK(dt_weyl_invariants(a * a).invariant);

  oracle::Rng rng(12);
  auto d2 = RootDatum::build("A2");
  for (int trial = 0; trial < 10; ++trial) {
    DtElt x = random_classical(d2, rng), y = random_classical(d2, rng);
    for (WeylElt w : d2->weyl_enumerate()) CHECK(dt_weyl_act(w, x * y) == dt_weyl_act(w, x) * dt_weyl_act(w, y));
    CHECK(dt_weyl_invariants(dt_weyl_invariants(x).average).invariant);
  }
}

TEST_CASE("isogeny filters") {
  auto d = RootDatum::build("A1");
  auto lat = Sublattice::from_generators(1, {{2}});
  CHECK(lat.index() == 2);
  CHECK(Sublattice::adjoint(*d).basis() == lat.basis());
  auto x = DtElt::exp(d, {1}) + DtElt::exp(d, {2});
  CHECK(isogeny_filter(x, lat) == DtElt::exp(d, {2}));
  CHECK(isogeny_filter(DtElt::exp(d, {1}), lat).is_zero());
  CHECK(isogeny_filter(DtElt::exp(d, {4}), lat) == DtElt::exp(d, {4}));
  CHECK_THROWS_AS(Sublattice::from_generators(2, {{1, 1}}), NotFiniteIndex);

  auto a2 = RootDatum::build("A2");
  CHECK(Sublattice::adjoint(*a2).index() == 3);
  CHECK(Sublattice::adjoint(*a2).contains({1, 1}));
  CHECK_FALSE(Sublattice::adjoint(*a2).contains({1, 0}));
}

TEST_CASE("Ore moves") {
  OreFactor a{{1}, 0};
  CHECK(ore_move(a, {1}, MoveSide::to_left) == OreFactor{{1}, 1});
  CHECK(ore_move(a, {0}, MoveSide::to_left) == a);
  for (long m : {-2L, 1L, 3L}) CHECK(ore_move(ore_move(a, {m}, MoveSide::to_left), {m}, MoveSide::to_right) == a);

  // e^varpi alpha^{-1} = (alpha - hbar)^{-1} e^varpi, checked by clearing denominators:
  // (alpha - hbar) e^varpi = e^varpi alpha.
  auto d = RootDatum::build("A1");
  auto e = DtElt::exp(d, {1});
  CHECK(DtElt::poly(d, OreFactor{{1}, 1}.poly(2)) * e == e * DtElt::poly(d, a.poly(2)));
}

TEST_CASE("localized elements") {
  auto d = RootDatum::build("A1");
  OreFactor a{{1}, 0};
  auto inv = LocalizedDt::fraction(d, OreFraction::inverse_of(a, 2));
  auto x = LocalizedDt::from_dt(DtElt::poly(d, a.poly(2)));
  auto one = LocalizedDt::from_dt(DtElt::one(d));
  CHECK(inv * x == one);
  CHECK(x * inv == one);
  auto e = LocalizedDt::from_dt(DtElt::exp(d, {1}));
  auto prod = e * inv;
  auto lf = prod.as_left_fraction();
  REQUIRE(lf.denominator.size() == 1);
  CHECK(lf.denominator[0] == OreFactor{{1}, 1});
  CHECK_FALSE(prod.as_dt().has_value());
  CHECK((prod * x).as_dt().has_value());
  CHECK(daha_to_localized(localized_to_daha(prod)) == prod);
}

TEST_CASE("sandwich consistency") {
  for (const auto& t : {"A1", "A2"}) {
    auto rep = sandwich_check(RootDatum::build(t), 8, 3);
    CHECK(rep.all_pass());
    CHECK(rep.samples_ok == 8);
  }
  auto d = RootDatum::build("A1");
  auto p = random_invariant(d, 4);
  CHECK(dt_weyl_invariants(p).invariant);
  CHECK(spherical_to_invariant(spherical_project(dt_embed_daha(p))) == LocalizedDt::from_dt(p));
}
