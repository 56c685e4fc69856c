#pragma once

// Exact arithmetic kernel: rationals, sparse multivariate polynomials over Q in
// the coordinates of t_aff = t + Q.hbar, and fractions whose denominators are
// products of linear forms (coroot - c.hbar).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "toda/errors.hpp"

namespace toda {

class Rational {
 public:
  Rational() = default;
  template <class Int>
    requires std::is_integral_v<Int>
  Rational(Int n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design of the numeric tower
  Rational(long num, long den);
  explicit Rational(mpq_class v);
  Rational(const mpz_class& num, const mpz_class& den);

  // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  long to_long() const;  // throws if not an integer or out of range
  mpz_class floor() const;
  Rational frac() const;  // x - floor(x), in [0, 1)
  Rational abs() const { return Rational(::abs(v_)); }
  Rational inverse() const;
  std::string str() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

using QVec = std::vector<Rational>;
using IVec = std::vector<long>;

Rational dot(std::span<const Rational> a, std::span<const long> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
long dot(std::span<const long> a, std::span<const long> b);
QVec to_qvec(std::span<const long> v);
std::string to_string(std::span<const Rational> v);
std::string to_string(std::span<const long> v);
// Parses "a,b,c" where each entry is a rational "p/q".
QVec parse_qvec(std::string_view text);

// Dense linear algebra over Q. Matrices are row-major lists of rows.
using QMatrix = std::vector<QVec>;
// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& m, std::size_t ncols);
std::size_t matrix_rank(QMatrix m, std::size_t ncols);
std::vector<QVec> nullspace(QMatrix m, std::size_t ncols);
// Some solution of a x = b, or nullopt when inconsistent.
std::optional<QVec> solve_linear(QMatrix a, const QVec& b, std::size_t ncols);

using Exponents = std::vector<std::uint16_t>;

// Graded lexicographic order, variable 0 most significant, the last variable
// (hbar) least significant. Sorting with this comparator puts the leading
// term first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(Exponents exps, const Rational& c);
  // sum_i coeffs[i] * x_i + constant; coeffs.size() must equal nvars.
  static MultiPoly linear(std::span<const Rational> coeffs, const Rational& constant = Rational());
  static MultiPoly linear(std::span<const long> coeffs, const Rational& constant = Rational());

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  std::map<int, MultiPoly> homogeneous_parts() const;
  unsigned degree_in(std::size_t var) const;

  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;

  Rational evaluate(std::span<const Rational> point) const;
  // Substitutes a constant for one variable; the variable stays in the ring.
  MultiPoly substitute_value(std::size_t var, const Rational& value) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;
  MultiPoly pow(unsigned k) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str(std::span<const std::string> names = {}) const;

  // Used by the arithmetic below; keeps the no-zero-coefficient invariant.
  void add_term(const Exponents& e, const Rational& c);

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

enum class PolyOp { add, mul, exact_divide };

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);  // throws NonDivisible

// Ring homomorphism sending variable i to images[i]. The images are expected to
// have degree <= 1 (affine-linear); higher-degree images are accepted but then
// degree is no longer preserved.
MultiPoly substitute_linear(const MultiPoly& f, std::span<const MultiPoly> images);

// ---------------------------------------------------------------------------
// Denominator factors.

// The linear form  coroot . xi - shift * hbar  on t_aff, with coroot given in
// t-coordinates (all variables except the last) and hbar the last variable.
// Normal form: coroot primitive with positive leading entry.
struct OreFactor {
  IVec coroot;
  long shift = 0;

  MultiPoly poly(std::size_t nvars) const;
  std::string str(std::span<const std::string> names = {}) const;
  friend auto operator<=>(const OreFactor&, const OreFactor&) = default;
};

// coroot . xi - shift, the image of an OreFactor after hbar is set to a number.
struct LevelFactor {
  IVec coroot;
  Rational shift;

  MultiPoly poly(std::size_t nvars) const;
  std::string str(std::span<const std::string> names = {}) const;
  friend auto operator<=>(const LevelFactor&, const LevelFactor&) = default;
};

template <class Factor>
struct Scaled {
  Rational scale;
  Factor factor;
};

// Brings (v, c) to  scale * (v' - c' hbar)  with v' primitive, leading entry
// positive. Throws NotOreFactor if v = 0 or c' would not be an integer.
Scaled<OreFactor> normalize_factor(IVec coroot, long shift);
Scaled<LevelFactor> normalize_factor(IVec coroot, Rational shift);

// ---------------------------------------------------------------------------

// numerator / product(denominator), with the numerator stored monic and its
// leading coefficient kept in scale. Linear factors dividing the numerator are
// cancelled, so equal fractions have identical representations.
template <class Factor>
class Fraction {
 public:
  Fraction() = default;
  explicit Fraction(std::size_t nvars) : num_(nvars) {}
  Fraction(const MultiPoly& p) { *this = make(p, {}); }  // NOLINT: polynomials are fractions

  static Fraction make(MultiPoly num, std::vector<Factor> den);
  static Fraction inverse_of(const Factor& f, std::size_t nvars) {
    return make(MultiPoly::constant(nvars, 1), {f});
  }

  std::size_t nvars() const { return num_.nvars(); }
  const MultiPoly& numerator() const { return num_; }
  const std::vector<Factor>& denominator() const { return den_; }
  const Rational& scale() const { return scale_; }
  MultiPoly scaled_numerator() const { return num_ * scale_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  std::optional<MultiPoly> as_polynomial() const {
    if (!den_.empty()) return std::nullopt;
    return scaled_numerator();
  }

  Fraction& operator*=(const Rational& c);
  friend Fraction operator+(const Fraction& a, const Fraction& b) { return add(a, b, false); }
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return add(a, b, true); }
  friend Fraction operator*(const Fraction& a, const Fraction& b) { return multiply(a, b); }
  friend Fraction operator*(Fraction a, const Rational& c) { return a *= c; }
  Fraction operator-() const { Fraction r = *this; r.scale_ = -r.scale_; return r; }
  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }

  friend bool operator==(const Fraction&, const Fraction&) = default;

  std::string str(std::span<const std::string> names = {}) const;

 private:
  static Fraction add(const Fraction& a, const Fraction& b, bool subtract);
  static Fraction multiply(const Fraction& a, const Fraction& b);

  MultiPoly num_;
  std::vector<Factor> den_;
  Rational scale_;
};

using OreFraction = Fraction<OreFactor>;
using LevelFraction = Fraction<LevelFactor>;

// --- Fraction implementation -------------------------------------------------

namespace detail {

template <class Factor>
MultiPoly product_of(std::span<const Factor> fs, std::size_t nvars) {
  MultiPoly p = MultiPoly::constant(nvars, 1);
  for (const Factor& f : fs) p = p * f.poly(nvars);
  return p;
}

// Multiset difference a \ b of sorted ranges.
template <class Factor>
std::vector<Factor> multiset_minus(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  std::vector<Factor> out;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (j < b.size() && b[j] < a[i]) ++j;
    if (j < b.size() && b[j] == a[i]) {
      ++j;
      continue;
    }
    out.push_back(a[i]);
  }
  return out;
}

template <class Factor>
std::vector<Factor> multiset_max_union(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  std::vector<Factor> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

template <class Factor>
Fraction<Factor> Fraction<Factor>::make(MultiPoly num, std::vector<Factor> den) {
  Fraction r;
  std::size_t nvars = num.nvars();
  if (num.is_zero()) {
    r.num_ = MultiPoly(nvars);
    return r;
  }
  std::sort(den.begin(), den.end());
  std::vector<Factor> kept;
  kept.reserve(den.size());
  for (std::size_t i = 0; i < den.size();) {
    std::size_t j = i;
    while (j < den.size() && den[j] == den[i]) ++j;
    MultiPoly fp = den[i].poly(nvars);
    std::size_t remaining = j - i;
    while (remaining > 0) {
      auto q = try_divide(num, fp);
      if (!q) break;
      num = std::move(*q);
      --remaining;
    }
    kept.insert(kept.end(), remaining, den[i]);
    i = j;
  }
  r.scale_ = num.leading_coefficient();
  num *= r.scale_.inverse();
  r.num_ = std::move(num);
  r.den_ = std::move(kept);
  return r;
}

template <class Factor>
Fraction<Factor>& Fraction<Factor>::operator*=(const Rational& c) {
  if (c.is_zero()) {
    *this = Fraction(nvars());
  } else if (!is_zero()) {
    scale_ *= c;
  }
  return *this;
}

template <class Factor>
Fraction<Factor> Fraction<Factor>::add(const Fraction& a, const Fraction& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  if (a.nvars() != b.nvars()) throw DimensionMismatch("fraction variable count mismatch");
  std::size_t nvars = a.nvars();
  if (a.den_ == b.den_) {
    MultiPoly n = a.scaled_numerator();
    if (subtract) n -= b.scaled_numerator(); else n += b.scaled_numerator();
    return make(std::move(n), a.den_);
  }
  std::vector<Factor> common = detail::multiset_max_union(a.den_, b.den_);
  auto ma = detail::multiset_minus(common, a.den_);
  auto mb = detail::multiset_minus(common, b.den_);
  MultiPoly na = a.scaled_numerator() * detail::product_of<Factor>(ma, nvars);
  MultiPoly nb = b.scaled_numerator() * detail::product_of<Factor>(mb, nvars);
  if (subtract) na -= nb; else na += nb;
  return make(std::move(na), std::move(common));
}

template <class Factor>
Fraction<Factor> Fraction<Factor>::multiply(const Fraction& a, const Fraction& b) {
  if (a.is_zero() || b.is_zero()) return Fraction<Factor>(a.nvars());
  if (a.nvars() != b.nvars()) throw DimensionMismatch("fraction variable count mismatch");
  std::vector<Factor> den = a.den_;
  den.insert(den.end(), b.den_.begin(), b.den_.end());
  if (a.den_.empty() && b.den_.empty()) {
    Fraction<Factor> r;
    r.num_ = a.num_ * b.num_;
    r.scale_ = a.scale_ * b.scale_;
    return r;
  }
  return Fraction<Factor>::make(a.num_ * b.num_ * (a.scale_ * b.scale_), std::move(den));
}

template <class Factor>
std::string Fraction<Factor>::str(std::span<const std::string> names) const {
  if (is_zero()) return "0";
  std::string s = scaled_numerator().str(names);
  if (den_.empty()) return s;
  s = "(" + s + ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) s += "*";
    s += "(" + den_[i].str(names) + ")";
  }
  return s + ")";
}

}  // namespace toda
