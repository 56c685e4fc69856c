#include "toda/torus_diffops.hpp"

#include <numeric>
#include <random>

#include "toda/parallel.hpp"

namespace toda {

namespace {

bool is_zero_vec(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

IVec negated(IVec v) {
  for (long& x : v) x = -x;
  return v;
}

// e^mu g e^{-mu} = g(xi - <mu, xi> hbar), or with hbar = 1 in the classical case.
MultiPoly conjugate_by_exp(const RootDatum& d, const IVec& mu, const MultiPoly& g, DtLevel level) {
  if (g.is_constant() || is_zero_vec(mu)) return g;
  std::size_t n = d.nvars();
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly x = MultiPoly::variable(n, i);
    if (i < d.dim() && mu[i] != 0) {
      if (level == DtLevel::rees) {
        x -= MultiPoly::variable(n, d.hbar_index()) * Rational(mu[i]);
      } else {
        x -= MultiPoly::constant(n, Rational(mu[i]));
      }
    }
    images.push_back(std::move(x));
  }
  return substitute_linear(g, images);
}

}  // namespace

// --- DtElt ---------------------------------------------------------------------

DtElt DtElt::poly(DatumPtr d, const MultiPoly& f, DtLevel level) {
  if (f.nvars() != d->nvars() && !f.is_zero()) throw DimensionMismatch("polynomial has wrong variable count");
  if (level == DtLevel::classical && f.degree_in(d->hbar_index()) > 0)
    throw LevelMismatch("classical differential operators do not involve hbar");
  DtElt x(d, level);
  x.add_term(IVec(d->dim(), 0), f);
  return x;
}

DtElt DtElt::exp(DatumPtr d, const IVec& mu, DtLevel level) {
  if (mu.size() != d->dim()) throw DimensionMismatch("character has wrong dimension");
  DtElt x(d, level);
  x.add_term(mu, MultiPoly::constant(d->nvars(), 1));
  return x;
}

DtElt DtElt::one(DatumPtr d, DtLevel level) { return exp(d, IVec(d->dim(), 0), level); }

void DtElt::add_term(const IVec& mu, const MultiPoly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mu, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DtElt::check_compatible(const DtElt& o) const {
  if (!datum_ || !o.datum_ || (datum_ != o.datum_ && datum_->label() != o.datum_->label()))
    throw DatumMismatch("differential operators over different tori");
  if (level_ != o.level_) throw LevelMismatch("mixing Rees and classical differential operators");
}

DtElt& DtElt::operator+=(const DtElt& o) {
  check_compatible(o);
  for (const auto& [mu, f] : o.terms_) add_term(mu, f);
  return *this;
}

DtElt& DtElt::operator-=(const DtElt& o) {
  check_compatible(o);
  for (const auto& [mu, f] : o.terms_) add_term(mu, -f);
  return *this;
}

DtElt& DtElt::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [mu, f] : terms_) f *= c;
  }
  return *this;
}

DtElt operator*(const DtElt& a, const DtElt& b) {
  a.check_compatible(b);
  DtElt out(a.datum_, a.level_);
  for (const auto& [mu, f] : a.terms_) {
    for (const auto& [nu, g] : b.terms_) {
      IVec sum = mu;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += nu[i];
      out.add_term(sum, f * conjugate_by_exp(*a.datum_, mu, g, a.level_));
    }
  }
  return out;
}

bool operator==(const DtElt& a, const DtElt& b) {
  a.check_compatible(b);
  return a.terms_ == b.terms_;
}

int DtElt::order() const {
  int best = -1;
  std::size_t h = datum_->hbar_index();
  for (const auto& [mu, f] : terms_)
    for (const auto& [e, c] : f.terms()) best = std::max(best, static_cast<int>(total_degree(e) - e[h]));
  return best;
}

std::string DtElt::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [mu, f] : terms_) {
    if (!s.empty()) s += " + ";
    s += "[" + f.str(datum_->variable_names()) + "]";
    if (!is_zero_vec(mu)) s += "*e^" + to_string(std::span<const long>(mu));
  }
  return s;
}

DtElt dt_mul(const DtElt& x, const DtElt& y) { return x * y; }

DtElt dt_weyl_act(WeylElt w, const DtElt& x) {
  const RootDatum& d = *x.datum();
  ExtAffineElt g = d.finite(w);
  DtElt out(x.datum(), x.level());
  for (const auto& [mu, f] : x.terms()) out.add_term(d.act_weight(w, mu), act_on_poly(d, g, f));
  return out;
}

DtElt dt_classical(const DtElt& x) {
  if (x.level() == DtLevel::classical) return x;
  DtElt out(x.datum(), DtLevel::classical);
  for (const auto& [mu, f] : x.terms()) out.add_term(mu, f.substitute_value(x.datum()->hbar_index(), Rational(1)));
  return out;
}

DahaElt dt_embed_daha(const DtElt& x) {
  if (x.level() != DtLevel::rees) throw LevelMismatch("the nil-DAHA embedding needs the Rees form");
  const RootDatum& d = *x.datum();
  DahaElt out(x.datum());
  for (const auto& [mu, f] : x.terms()) out.add_term(d.translation(negated(mu)), OreFraction(f));
  return out;
}

LevelDahaElt dt_embed_daha_classical(const DtElt& x) {
  if (x.level() != DtLevel::classical) throw LevelMismatch("expected a classical differential operator");
  const RootDatum& d = *x.datum();
  LevelDahaElt out(x.datum(), Rational(1));
  for (const auto& [mu, f] : x.terms()) out.add_term(d.translation(negated(mu)), LevelFraction(f));
  return out;
}

WeylInvariance dt_weyl_invariants(const DtElt& x) {
  const RootDatum& d = *x.datum();
  WeylInvariance r;
  r.invariant = true;
  r.average = DtElt(x.datum(), x.level());
  for (WeylElt w : d.weyl_enumerate()) {
    DtElt y = dt_weyl_act(w, x);
    if (r.invariant && !(y == x)) r.invariant = false;
    r.average += y;
  }
  r.average *= Rational(1) / Rational(static_cast<long>(d.weyl_order()));
  return r;
}

// --- lattices -----------------------------------------------------------------------

namespace {

// Row-style Hermite normal form of the lattice spanned by rows. Returns the
// nonzero rows, upper triangular with positive pivots and reduced entries
// above each pivot.
std::vector<IVec> hermite_rows(std::vector<IVec> rows, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
    // Euclid on column col among rows r..end.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || std::labs(rows[i][col]) < std::labs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        long q = rows[i][col] / rows[r][col];
        if (q != 0)
          for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][col] != 0) {
      if (rows[r][col] < 0)
        for (long& v : rows[r]) v = -v;
      for (std::size_t i = 0; i < r; ++i) {
        long q = rows[i][col] / rows[r][col];
        if (rows[i][col] - q * rows[r][col] < 0) --q;
        if (q != 0)
          for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

// Integer kernel of the k x n integer matrix m: unimodular column operations
// bring m to echelon form, the columns of the transform under zero columns span
// the kernel.
std::vector<IVec> integer_kernel(std::vector<IVec> m, std::size_t n) {
  std::vector<IVec> u(n, IVec(n, 0));  // columns of u are u[.][c]
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, long q) {  // col dst -= q col src
    for (auto& row : m) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
  };
  std::size_t c = 0;
  for (std::size_t r = 0; r < m.size() && c < n; ++r) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (m[r][j] != 0 && (best == n || std::labs(m[r][j]) < std::labs(m[r][best]))) best = j;
      if (best == n) break;
      col_swap(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        long q = m[r][j] / m[r][c];
        if (q != 0) col_op(j, c, q);
        if (m[r][j] != 0) done = false;
      }
      if (done) {
        ++c;
        break;
      }
    }
  }
  std::vector<IVec> kernel;
  for (std::size_t j = c; j < n; ++j) {
    IVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i][j];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

Sublattice Sublattice::from_generators(std::size_t dim, const std::vector<IVec>& generators) {
  for (const auto& g : generators)
    if (g.size() != dim) throw DimensionMismatch("lattice generator has wrong dimension");
  Sublattice l;
  l.basis_ = hermite_rows(generators, dim);
  if (l.basis_.size() != dim) throw NotFiniteIndex("generators span a sublattice of infinite index");
  return l;
}

Sublattice Sublattice::from_central_elements(std::size_t dim, const std::vector<QVec>& zetas) {
  // {mu : <mu, zeta_k> in Z}; with N a common denominator and A = N zeta this
  // is the projection of the kernel of (mu, y) -> A mu - N y.
  mpz_class big(1);
  for (const auto& z : zetas) {
    if (z.size() != dim) throw DimensionMismatch("central element has wrong dimension");
    for (const auto& q : z) mpz_lcm(big.get_mpz_t(), big.get_mpz_t(), q.denominator().get_mpz_t());
  }
  if (!big.fits_slong_p()) throw NotFiniteIndex("central element order too large");
  long N = big.get_si();
  std::size_t k = zetas.size();
  std::vector<IVec> m(k, IVec(dim + k, 0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < dim; ++i) m[r][i] = (zetas[r][i] * Rational(N)).to_long();
    m[r][dim + r] = -N;
  }
  std::vector<IVec> gens;
  for (auto& v : integer_kernel(m, dim + k)) {
    v.resize(dim);
    gens.push_back(std::move(v));
  }
  return from_generators(dim, gens);
}

Sublattice Sublattice::adjoint(const RootDatum& d) { return from_central_elements(d.dim(), center_coweights(d)); }

long Sublattice::index() const {
  long idx = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) idx *= basis_[i][i];
  return idx;
}

bool Sublattice::contains(const IVec& mu) const {
  if (mu.size() != basis_.size()) throw DimensionMismatch("character has wrong dimension");
  IVec rest = mu;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (rest[i] % basis_[i][i] != 0) return false;
    long c = rest[i] / basis_[i][i];
    for (std::size_t j = i; j < rest.size(); ++j) rest[j] -= c * basis_[i][j];
  }
  return true;
}

std::vector<QVec> center_coweights(const RootDatum& d) {
  // Fundamental coweight i: sum_k c_k alpha_k^vee with <alpha_j, .> = delta_ij,
  // i.e. sum_k c_k a_kj = delta_ij.
  std::size_t r = d.rank();
  QMatrix a(r, QVec(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) a[j][k] = Rational(d.cartan()[k][j]);
  std::vector<QVec> out;
  for (std::size_t i = 0; i < r; ++i) {
    QVec rhs(r);
    rhs[i] = Rational(1);
    auto c = solve_linear(a, rhs, r);
    if (!c) throw Error("Cartan matrix is singular");
    QVec v(d.dim());
    for (std::size_t k = 0; k < r; ++k) v[k] = (*c)[k];
    out.push_back(std::move(v));
  }
  return out;
}

DtElt isogeny_filter(const DtElt& x, const Sublattice& lattice) {
  DtElt out(x.datum(), x.level());
  for (const auto& [mu, f] : x.terms())
    if (lattice.contains(mu)) out.add_term(mu, f);
  return out;
}

// --- localization ---------------------------------------------------------------

OreFactor ore_move(const OreFactor& factor, const IVec& mu, MoveSide side) {
  if (factor.coroot.size() != mu.size()) throw DimensionMismatch("character and factor dimensions differ");
  long p = dot(std::span<const long>(mu), std::span<const long>(factor.coroot));
  OreFactor out = factor;
  out.shift += side == MoveSide::to_left ? p : -p;
  return out;
}

LocalizedDt LocalizedDt::from_dt(const DtElt& x) {
  if (x.level() != DtLevel::rees) throw LevelMismatch("localization is built on the Rees form");
  LocalizedDt out(x.datum());
  for (const auto& [mu, f] : x.terms()) out.add_term(mu, OreFraction(f));
  return out;
}

LocalizedDt LocalizedDt::fraction(DatumPtr d, const OreFraction& f) {
  LocalizedDt out(d);
  out.add_term(IVec(d->dim(), 0), f);
  return out;
}

void LocalizedDt::add_term(const IVec& mu, const OreFraction& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mu, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LocalizedDt operator+(LocalizedDt a, const LocalizedDt& b) {
  for (const auto& [mu, f] : b.terms_) a.add_term(mu, f);
  return a;
}

LocalizedDt operator*(const LocalizedDt& a, const LocalizedDt& b) {
  if (!a.datum_ || !b.datum_ || a.datum_->label() != b.datum_->label())
    throw DatumMismatch("localized operators over different tori");
  const RootDatum& d = *a.datum_;
  LocalizedDt out(a.datum_);
  for (const auto& [mu, f] : a.terms_) {
    for (const auto& [nu, g] : b.terms_) {
      // e^mu G = G' e^mu: numerator by xi -> xi - <mu, xi> hbar, factors by ore_move.
      MultiPoly num = conjugate_by_exp(d, mu, g.scaled_numerator(), DtLevel::rees);
      std::vector<OreFactor> den;
      for (const auto& fac : g.denominator()) den.push_back(ore_move(fac, mu, MoveSide::to_left));
      IVec sum = mu;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += nu[i];
      out.add_term(sum, f * OreFraction::make(std::move(num), std::move(den)));
    }
  }
  return out;
}

LocalizedDt::LeftFraction LocalizedDt::as_left_fraction() const {
  LeftFraction lf{{}, Rational(1), DtElt(datum_, DtLevel::rees)};
  for (const auto& [mu, f] : terms_) lf.denominator = detail::multiset_max_union(lf.denominator, f.denominator());
  std::size_t n = datum_->nvars();
  for (const auto& [mu, f] : terms_) {
    auto extra = detail::multiset_minus(lf.denominator, f.denominator());
    lf.numerator.add_term(mu, f.scaled_numerator() * detail::product_of<OreFactor>(extra, n));
  }
  return lf;
}

std::optional<DtElt> LocalizedDt::as_dt() const {
  DtElt out(datum_, DtLevel::rees);
  for (const auto& [mu, f] : terms_) {
    auto p = f.as_polynomial();
    if (!p) return std::nullopt;
    out.add_term(mu, *p);
  }
  return out;
}

LocalizedDt LocalizedDt::weyl_act(WeylElt w) const {
  const RootDatum& d = *datum_;
  LocalizedDt out(datum_);
  for (const auto& [mu, f] : terms_)
    out.add_term(d.act_weight(w, mu), act_on_fraction(d, d.finite(w), f, Rational()));
  return out;
}

std::string LocalizedDt::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [mu, f] : terms_) {
    if (!s.empty()) s += " + ";
    s += "[" + f.str(datum_->variable_names()) + "]";
    if (!is_zero_vec(mu)) s += "*e^" + to_string(std::span<const long>(mu));
  }
  return s;
}

DahaElt localized_to_daha(const LocalizedDt& x) {
  const RootDatum& d = *x.datum();
  DahaElt out(x.datum());
  for (const auto& [mu, f] : x.terms()) out.add_term(d.translation(negated(mu)), f);
  return out;
}

LocalizedDt daha_to_localized(const DahaElt& x) {
  LocalizedDt out(x.datum());
  for (const auto& [g, f] : x.terms()) {
    if (g.finite.index != 0) throw Error("element has a nontrivial finite Weyl part");
    out.add_term(negated(g.translation), f);
  }
  return out;
}

LocalizedDt spherical_to_invariant(const DahaElt& spherical) {
  LocalizedDt out(spherical.datum());
  for (const auto& [g, f] : spherical.terms()) out.add_term(negated(g.translation), f);
  return out;
}

// --- sandwich checks -------------------------------------------------------------

DtElt random_invariant(const DatumPtr& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t nv = d->nvars(), dim = d->dim();
  auto monos = monomials_up_to(nv - 1, 2);
  while (true) {
    DtElt x(d, DtLevel::rees);
    std::size_t nterms = 1 + rng() % 2;
    for (std::size_t k = 0; k < nterms; ++k) {
      IVec mu(dim);
      for (auto& m : mu) m = static_cast<long>(rng() % 3) - 1;
      Exponents e = monos[rng() % monos.size()].leading_exponents();
      e.push_back(0);
      long c = static_cast<long>(rng() % 7) - 3;
      if (c == 0) c = 1;
      x += DtElt::poly(d, MultiPoly::monomial(e, Rational(c))) * DtElt::exp(d, mu);
    }
    DtElt avg = dt_weyl_invariants(x).average;
    if (!avg.is_zero()) return avg;
  }
}

SandwichReport sandwich_check(const DatumPtr& d, std::size_t samples, std::uint64_t seed) {
  SandwichReport rep;
  rep.type = d->label();
  std::size_t nv = d->nvars();
  std::vector<DtElt> gens;
  for (std::size_t i = 0; i < nv; ++i) gens.push_back(DtElt::poly(d, MultiPoly::variable(nv, i)));
  for (std::size_t i = 0; i < d->dim(); ++i)
    for (long s : {1L, -1L}) {
      IVec mu(d->dim(), 0);
      mu[i] = s;
      gens.push_back(DtElt::exp(d, mu));
    }
  for (const auto& a : gens)
    for (const auto& b : gens) {
      ++rep.generator_pairs;
      if (dt_embed_daha(a * b) == dt_embed_daha(a) * dt_embed_daha(b)) {
        ++rep.generator_pairs_ok;
      } else {
        rep.counterexamples.push_back("embedding not multiplicative on " + a.str() + " * " + b.str());
      }
    }

  std::vector<std::string> failures(samples);
  parallel_for(samples, [&](std::size_t i) {
    DtElt p = random_invariant(d, seed + 2 * i);
    DtElt q = random_invariant(d, seed + 2 * i + 1);
    DahaElt ep = spherical_project(dt_embed_daha(p));
    DahaElt eq = spherical_project(dt_embed_daha(q));
    DahaElt prod = ep * eq;
    if (spherical_to_invariant(ep) != LocalizedDt::from_dt(p)) {
      failures[i] = "e iota(P) e does not return P for P = " + p.str();
    } else if (prod != spherical_project(dt_embed_daha(p * q))) {
      failures[i] = "spherical product differs from the image of PQ for P = " + p.str() + ", Q = " + q.str();
    } else if (spherical_to_invariant(prod) != LocalizedDt::from_dt(p * q)) {
      failures[i] = "spherical product does not reproduce PQ for P = " + p.str() + ", Q = " + q.str();
    }
  });
  rep.samples = samples;
  for (auto& f : failures) {
    if (f.empty()) {
      ++rep.samples_ok;
    } else {
      rep.counterexamples.push_back(std::move(f));
    }
  }
  return rep;
}

}  // namespace toda
