#pragma once

// The degenerate nil-DAHA inside the smash product of the extended affine Weyl
// group with fractions on t*_aff. An element is a finite sum  sum_g f_g . g
// with f_g a fraction and g in W ⋉ X*(T); products follow
//   (f w)(g v) = (f . w(g)) (w v).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toda/exact_algebra.hpp"
#include "toda/root_data.hpp"

namespace toda {

// The action of g on a fraction: numerator by substitution, each denominator
// factor by the linear action on t_aff followed by renormalization. The
// level-fraction overload treats hbar as the number `level`.
OreFraction act_on_fraction(const RootDatum& d, const ExtAffineElt& g, const OreFraction& f, const Rational& level);
LevelFraction act_on_fraction(const RootDatum& d, const ExtAffineElt& g, const LevelFraction& f,
                              const Rational& level);
MultiPoly act_on_poly(const RootDatum& d, const ExtAffineElt& g, const MultiPoly& f);

template <class Frac>
class BasicDahaElt {
 public:
  using Terms = std::map<ExtAffineElt, Frac>;

  BasicDahaElt() = default;
  explicit BasicDahaElt(DatumPtr d, Rational level = Rational()) : datum_(std::move(d)), level_(std::move(level)) {}

  const DatumPtr& datum() const { return datum_; }
  const Rational& level() const { return level_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExtAffineElt& g, const Frac& f) {
    if (f.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BasicDahaElt& operator+=(const BasicDahaElt& o) {
    check_compatible(o);
    for (const auto& [g, f] : o.terms_) add_term(g, f);
    return *this;
  }
  BasicDahaElt& operator-=(const BasicDahaElt& o) {
    check_compatible(o);
    for (const auto& [g, f] : o.terms_) add_term(g, -f);
    return *this;
  }
  BasicDahaElt& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [g, f] : terms_) f *= c;
    }
    return *this;
  }
  friend BasicDahaElt operator+(BasicDahaElt a, const BasicDahaElt& b) { return a += b; }
  friend BasicDahaElt operator-(BasicDahaElt a, const BasicDahaElt& b) { return a -= b; }
  friend BasicDahaElt operator*(BasicDahaElt a, const Rational& c) { return a *= c; }
  friend BasicDahaElt operator*(const Rational& c, BasicDahaElt a) { return a *= c; }
  BasicDahaElt operator-() const { return *this * Rational(-1); }

  friend BasicDahaElt operator*(const BasicDahaElt& x, const BasicDahaElt& y) {
    x.check_compatible(y);
    BasicDahaElt out(x.datum_, x.level_);
    const RootDatum& d = *x.datum_;
    for (const auto& [gx, fx] : x.terms_) {
      for (const auto& [gy, fy] : y.terms_) {
        Frac moved = act_on_fraction(d, gx, fy, x.level_);
        out.add_term(d.mul(gx, gy), fx * moved);
      }
    }
    return out;
  }

  friend bool operator==(const BasicDahaElt& a, const BasicDahaElt& b) {
    a.check_compatible(b);
    return a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    const auto& names = datum_->variable_names();
    for (const auto& [g, f] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + f.str(names) + "]";
      bool trivial_t = std::all_of(g.translation.begin(), g.translation.end(), [](long v) { return v == 0; });
      if (!trivial_t) s += "*t" + to_string(std::span<const long>(g.translation));
      if (g.finite.index != 0) {
        s += "*s";
        for (std::size_t i : datum_->word(g.finite)) s += std::to_string(i + 1);
      }
    }
    return s;
  }

 private:
  void check_compatible(const BasicDahaElt& o) const {
    if (!datum_ || !o.datum_ || (datum_ != o.datum_ && datum_->label() != o.datum_->label()))
      throw DatumMismatch("elements over different root data");
    if (level_ != o.level_) throw DatumMismatch("elements at different hbar levels");
  }

  DatumPtr datum_;
  Rational level_;
  Terms terms_;
};

using DahaElt = BasicDahaElt<OreFraction>;
using LevelDahaElt = BasicDahaElt<LevelFraction>;

// --- generators ----------------------------------------------------------------

namespace gen {
struct Poly { MultiPoly f; };
struct Theta { std::size_t affine_index; };
struct Translate { IVec mu; };
struct Weyl { WeylElt w; };
struct Idempotent {};
}  // namespace gen
using Generator = std::variant<gen::Poly, gen::Theta, gen::Translate, gen::Weyl, gen::Idempotent>;

DahaElt daha_generator(const DatumPtr& d, const Generator& g);
DahaElt daha_one(const DatumPtr& d);
DahaElt daha_poly(const DatumPtr& d, const MultiPoly& f);
DahaElt daha_theta(const DatumPtr& d, std::size_t affine_index);
DahaElt daha_group(const DatumPtr& d, const ExtAffineElt& g);
DahaElt daha_idempotent(const DatumPtr& d);

// 1/alpha^vee for an affine simple root, as a fraction.
OreFraction inverse_affine_coroot(const RootDatum& d, std::size_t affine_index);
// The affine coroot as a linear polynomial on t*_aff.
MultiPoly affine_coroot_poly(const RootDatum& d, std::size_t affine_index);

DahaElt daha_mul(const DahaElt& x, const DahaElt& y);

// The standard module Sym(t_aff). Throws DenominatorNotCleared if the result
// is not a polynomial.
MultiPoly daha_act_poly(const DahaElt& x, const MultiPoly& f);
// Applies a single generator; for Theta this is the divided difference computed
// directly by exact division, independent of element multiplication.
MultiPoly generator_act_poly(const DatumPtr& d, const Generator& g, const MultiPoly& f);

DahaElt spherical_project(const DahaElt& x);
LevelDahaElt specialize_hbar(const DahaElt& x, const Rational& c);
std::map<int, DahaElt> degree_decompose(const DahaElt& x);
// Largest degree occurring in the decomposition, i.e. the filtration level of
// the image at hbar = 1 for an element of the Rees algebra.
std::optional<int> filtration_level(const DahaElt& x);

// All monomials of Sym(t_aff) of total degree <= max_degree.
std::vector<MultiPoly> monomials_up_to(std::size_t nvars, unsigned max_degree);

// A word of generators; its element is the ordered product.
using GeneratorWord = std::vector<Generator>;
DahaElt word_element(const DatumPtr& d, const GeneratorWord& w);
MultiPoly word_act_poly(const DatumPtr& d, const GeneratorWord& w, const MultiPoly& f);
std::string generator_label(const RootDatum& d, const Generator& g);

struct RelationCheck {
  std::string name;
  std::string kind;  // square, braid, braid_power, commutation
  bool element_ok = false;
  bool action_ok = false;
  std::size_t monomials_checked = 0;
  std::string counterexample;  // empty when both checks pass
  bool passed() const { return element_ok && action_ok; }
};

struct PresentationReport {
  std::string type;
  unsigned degree = 0;
  std::vector<RelationCheck> relations;
  std::vector<std::string> skipped;  // pairs with infinite braid order
  bool all_pass() const;
};

// Checks theta^2 = 0, braid relations for every finite-order pair (both the
// alternating m-fold form and the (theta_a theta_b)^m power form), and the
// commutation theta_a s_a(h) - h theta_a = <a, h> for h in a basis of t_aff.
// Each relation is checked as an element identity and by acting on every
// monomial of degree <= max_degree. With throw_on_failure, the first failing
// relation raises RelationFailed.
PresentationReport verify_presentation(const DatumPtr& d, unsigned max_degree, bool throw_on_failure = false);

// Finds a monomial of degree <= max_degree on which x and y act differently.
std::optional<MultiPoly> distinguish(const DahaElt& x, const DahaElt& y, unsigned max_degree);

}  // namespace toda
