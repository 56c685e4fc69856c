#pragma once

// Differential operators on the torus T with character lattice X*(T), in the
// normal form  sum_mu f_mu(xi, hbar) e^mu  (polynomial on the left). The
// commutation rule is  xi e^mu = e^mu (xi + <mu, xi> hbar), with hbar = 1 in
// the classical algebra.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toda/exact_algebra.hpp"
#include "toda/nil_daha.hpp"
#include "toda/root_data.hpp"

namespace toda {

enum class DtLevel { rees, classical };

class DtElt {
 public:
  using Terms = std::map<IVec, MultiPoly>;

  DtElt() = default;
  DtElt(DatumPtr d, DtLevel level) : datum_(std::move(d)), level_(level) {}

  static DtElt poly(DatumPtr d, const MultiPoly& f, DtLevel level = DtLevel::rees);
  static DtElt exp(DatumPtr d, const IVec& mu, DtLevel level = DtLevel::rees);
  static DtElt one(DatumPtr d, DtLevel level = DtLevel::rees);

  const DatumPtr& datum() const { return datum_; }
  DtLevel level() const { return level_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const IVec& mu, const MultiPoly& f);

  DtElt& operator+=(const DtElt& o);
  DtElt& operator-=(const DtElt& o);
  DtElt& operator*=(const Rational& c);
  friend DtElt operator+(DtElt a, const DtElt& b) { return a += b; }
  friend DtElt operator-(DtElt a, const DtElt& b) { return a -= b; }
  friend DtElt operator*(DtElt a, const Rational& c) { return a *= c; }
  friend DtElt operator*(const DtElt& a, const DtElt& b);
  friend bool operator==(const DtElt& a, const DtElt& b);

  // Order-filtration degree: the largest total degree in t-variables.
  int order() const;
  std::string str() const;

  void check_compatible(const DtElt& o) const;

 private:
  DatumPtr datum_;
  DtLevel level_ = DtLevel::rees;
  Terms terms_;
};

DtElt dt_mul(const DtElt& x, const DtElt& y);
// w(f e^mu) = w(f) e^{w mu}
DtElt dt_weyl_act(WeylElt w, const DtElt& x);
// Rees form only: set hbar = 1.
DtElt dt_classical(const DtElt& x);

// Embedding into the nil-DAHA ambient: f e^mu -> f . t_{-mu}. The sign makes
// the two commutation conventions agree (t_{-mu} xi t_mu = xi - <mu, xi> hbar).
DahaElt dt_embed_daha(const DtElt& x);
// Classical elements land at hbar level 1.
LevelDahaElt dt_embed_daha_classical(const DtElt& x);

struct WeylInvariance {
  bool invariant = false;
  DtElt average;
};
WeylInvariance dt_weyl_invariants(const DtElt& x);

// Finite-index sublattice of X*(T) in Hermite normal form (rows).
class Sublattice {
 public:
  static Sublattice from_generators(std::size_t dim, const std::vector<IVec>& generators);
  // Characters trivial on the finite central subgroup generated by the
  // elements exp(2 pi i zeta), zeta rational in t-coordinates.
  static Sublattice from_central_elements(std::size_t dim, const std::vector<QVec>& zetas);
  // X*(T/Z(G_sc)): characters trivial on the whole center of the semisimple part.
  static Sublattice adjoint(const RootDatum& d);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<IVec>& basis() const { return basis_; }
  long index() const;
  bool contains(const IVec& mu) const;

 private:
  std::vector<IVec> basis_;  // lower-triangular HNF rows, positive diagonal
};

// Generators of the center of the simply connected semisimple part: the
// fundamental coweights, in coroot coordinates.
std::vector<QVec> center_coweights(const RootDatum& d);

DtElt isogeny_filter(const DtElt& x, const Sublattice& lattice);

// --- Ore localization -----------------------------------------------------------

enum class MoveSide {
  to_left,   // e^mu F^{-1}  ->  F'^{-1} e^mu
  to_right,  // F^{-1} e^mu  ->  e^mu F'^{-1}
};
OreFactor ore_move(const OreFactor& factor, const IVec& mu, MoveSide side);

// Elements of the localized Rees algebra stored as  sum_mu F_mu e^mu  with
// fractions F_mu on the left.
class LocalizedDt {
 public:
  using Terms = std::map<IVec, OreFraction>;

  LocalizedDt() = default;
  explicit LocalizedDt(DatumPtr d) : datum_(std::move(d)) {}
  static LocalizedDt from_dt(const DtElt& x);
  static LocalizedDt fraction(DatumPtr d, const OreFraction& f);

  const DatumPtr& datum() const { return datum_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const IVec& mu, const OreFraction& f);

  friend LocalizedDt operator+(LocalizedDt a, const LocalizedDt& b);
  friend LocalizedDt operator*(const LocalizedDt& a, const LocalizedDt& b);
  friend bool operator==(const LocalizedDt& a, const LocalizedDt& b) { return a.terms_ == b.terms_; }

  // One common denominator moved fully to the left:  D^{-1} N.
  struct LeftFraction {
    std::vector<OreFactor> denominator;
    Rational scale;  // the element is (scale * prod D)^{-1} N
    DtElt numerator;
  };
  LeftFraction as_left_fraction() const;
  std::optional<DtElt> as_dt() const;

  LocalizedDt weyl_act(WeylElt w) const;
  std::string str() const;

 private:
  DatumPtr datum_;
  Terms terms_;
};

DahaElt localized_to_daha(const LocalizedDt& x);
// Throws if x has a nontrivial finite Weyl part.
LocalizedDt daha_to_localized(const DahaElt& x);

// The map e . z . e -> (localized D(T))^W that forgets the finite Weyl parts
// of a spherical element: sum_{mu, w} c_{mu, w} t_mu w  ->  sum_mu (sum_w c_{mu, w}) e^{-mu}.
// On e iota(P) e for W-invariant P it returns P.
LocalizedDt spherical_to_invariant(const DahaElt& spherical);

// Embedding checks: dt_embed_daha is multiplicative on all pairs of generators
// (coordinates of t, hbar, e^{+-varpi_i}), and for random W-invariant P, Q
//   e iota(P) e . e iota(Q) e = e iota(PQ) e,
//   spherical_to_invariant(e iota(P) e . e iota(Q) e) = PQ.
struct SandwichReport {
  std::string type;
  std::size_t generator_pairs = 0;
  std::size_t generator_pairs_ok = 0;
  std::size_t samples = 0;
  std::size_t samples_ok = 0;
  std::vector<std::string> counterexamples;
  bool all_pass() const { return generator_pairs_ok == generator_pairs && samples_ok == samples; }
};
// A random W-average of a few terms f e^mu, deg f <= 2, mu in {-1, 0, 1}^dim; never zero.
DtElt random_invariant(const DatumPtr& d, std::uint64_t seed);
SandwichReport sandwich_check(const DatumPtr& d, std::size_t samples, std::uint64_t seed);

}  // namespace toda
