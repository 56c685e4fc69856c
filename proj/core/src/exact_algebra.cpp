#include "toda/exact_algebra.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace toda {

// --- Rational ----------------------------------------------------------------

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(zn, zd);
}

long Rational::to_long() const {
  if (!is_integer()) throw Error("rational " + str() + " is not an integer");
  if (!v_.get_num().fits_slong_p()) throw Error("integer " + str() + " out of range");
  return v_.get_num().get_si();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor(), mpz_class(1)); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const { return v_.get_str(); }

// --- vectors -------------------------------------------------------------------

Rational dot(std::span<const Rational> a, std::span<const long> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) s += a[i] * Rational(b[i]);
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long dot(std::span<const long> a, std::span<const long> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec to_qvec(std::span<const long> v) { return QVec(v.begin(), v.end()); }

std::string to_string(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

std::string to_string(std::span<const long> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

QVec parse_qvec(std::string_view text) {
  QVec out;
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty vector");
  while (true) {
    auto comma = s.find(',');
    out.push_back(Rational::parse(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

// --- MultiPoly -------------------------------------------------------------------

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionMismatch("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  MultiPoly p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(Exponents exps, const Rational& c) {
  MultiPoly p(exps.size());
  p.add_term(exps, c);
  return p;
}

MultiPoly MultiPoly::linear(std::span<const Rational> coeffs, const Rational& constant) {
  std::size_t n = coeffs.size();
  MultiPoly p(n);
  Exponents e(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1;
    p.add_term(e, coeffs[i]);
    e[i] = 0;
  }
  p.add_term(e, constant);
  return p;
}

MultiPoly MultiPoly::linear(std::span<const long> coeffs, const Rational& constant) {
  QVec q = to_qvec(coeffs);
  return linear(q, constant);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  if (e.size() != nvars_) throw DimensionMismatch("exponent vector length mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && ::toda::total_degree(terms_.begin()->first) == 0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(::toda::total_degree(terms_.begin()->first));
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return ::toda::total_degree(terms_.begin()->first) == ::toda::total_degree(terms_.rbegin()->first);
}

std::map<int, MultiPoly> MultiPoly::homogeneous_parts() const {
  std::map<int, MultiPoly> parts;
  for (const auto& [e, c] : terms_) {
    int d = static_cast<int>(::toda::total_degree(e));
    auto it = parts.try_emplace(d, MultiPoly(nvars_)).first;
    it->second.terms_.emplace_hint(it->second.terms_.end(), e, c);
  }
  return parts;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
  return d;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->second;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational() : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational s;
  for (const auto& [e, c] : terms_) {
    mpq_class m = c.value();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= point[i].value();
    s += Rational(m);
  }
  return s;
}

MultiPoly MultiPoly::substitute_value(std::size_t var, const Rational& value) const {
  MultiPoly out(nvars_);
  std::vector<Rational> powers{Rational(1)};
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
    Exponents f = e;
    f[var] = 0;
    out.add_term(f, c * powers[e[var]]);
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    if (nvars_ != o.nvars_ && nvars_ != 0) throw DimensionMismatch("polynomial variable count mismatch");
    *this = o;
    return *this;
  }
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (nvars_ != o.nvars_ && !(terms_.empty() && nvars_ == 0))
    throw DimensionMismatch("polynomial variable count mismatch");
  nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return MultiPoly(std::max(a.nvars_, b.nvars_));
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial variable count mismatch");
  MultiPoly out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

std::string MultiPoly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool constant = ::toda::total_degree(e) == 0;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (constant || mag != Rational(1)) {
      os << mag.str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      if (i < names.size()) os << names[i]; else os << "x" << i;
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

// --- division and substitution ----------------------------------------------------

namespace {

bool divides(const Exponents& small, const Exponents& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

}  // namespace

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (a.is_zero()) return MultiPoly(b.nvars());
  if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomial variable count mismatch");
  const Exponents& lb = b.leading_exponents();
  Rational lc_inv = b.leading_coefficient().inverse();
  MultiPoly r = a;
  MultiPoly q(a.nvars());
  Exponents e(a.nvars());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    if (!divides(lb, lr)) return std::nullopt;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(lr[i] - lb[i]);
    Rational c = r.leading_coefficient() * lc_inv;
    q.add_term(e, c);
    Exponents f(e.size());
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<std::uint16_t>(e[i] + eb[i]);
      r.add_term(f, -(c * cb));
    }
  }
  return q;
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw NonDivisible("polynomial " + b.str() + " does not divide " + a.str());
  return std::move(*q);
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::mul: return a * b;
    case PolyOp::exact_divide: return exact_divide(a, b);
  }
  throw Error("unknown polynomial operation");
}

MultiPoly substitute_linear(const MultiPoly& f, std::span<const MultiPoly> images) {
  std::size_t n = f.nvars();
  if (images.size() != n) throw DimensionMismatch("substitution must assign every variable");
  std::size_t m = n == 0 ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != m && !im.is_zero()) throw DimensionMismatch("substitution images live in different rings");
  std::vector<std::vector<MultiPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) powers[i].push_back(MultiPoly::constant(m, 1));
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * images[i]);
    return powers[i][k];
  };
  MultiPoly out(m);
  for (const auto& [e, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(m, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) t = t * power(i, e[i]);
    out += t;
  }
  return out;
}

// --- factors ---------------------------------------------------------------------

MultiPoly OreFactor::poly(std::size_t nvars) const {
  if (coroot.size() + 1 != nvars) throw DimensionMismatch("factor does not match the variable count");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  for (std::size_t i = 0; i < coroot.size(); ++i) {
    e[i] = 1;
    p.add_term(e, Rational(coroot[i]));
    e[i] = 0;
  }
  e[nvars - 1] = 1;
  p.add_term(e, Rational(-shift));
  return p;
}

std::string OreFactor::str(std::span<const std::string> names) const {
  return poly(coroot.size() + 1).str(names);
}

MultiPoly LevelFactor::poly(std::size_t nvars) const {
  if (coroot.size() + 1 != nvars) throw DimensionMismatch("factor does not match the variable count");
  std::vector<long> c = coroot;
  c.push_back(0);
  return MultiPoly::linear(std::span<const long>(c), -shift);
}

std::string LevelFactor::str(std::span<const std::string> names) const {
  return poly(coroot.size() + 1).str(names);
}

namespace {

long primitive_scale(const IVec& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x);
  if (g == 0) throw NotOreFactor("denominator factor has zero coroot part");
  for (long x : v) {
    if (x != 0) return x < 0 ? -g : g;
  }
  return g;
}

}  // namespace

Scaled<OreFactor> normalize_factor(IVec coroot, long shift) {
  long d = primitive_scale(coroot);
  if (shift % d != 0)
    throw NotOreFactor("shift " + std::to_string(shift) + " is not integral after making " +
                       to_string(std::span<const long>(coroot)) + " primitive");
  for (long& x : coroot) x /= d;
  return {Rational(d), OreFactor{std::move(coroot), shift / d}};
}

Scaled<LevelFactor> normalize_factor(IVec coroot, Rational shift) {
  long d = primitive_scale(coroot);
  for (long& x : coroot) x /= d;
  return {Rational(d), LevelFactor{std::move(coroot), shift / Rational(d)}};
}

}  // namespace toda

namespace toda {

// --- dense linear algebra -------------------------------------------------------

std::vector<std::size_t> row_reduce(QMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = m[row][col].inverse();
    for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        if (!m[row][j].is_zero()) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t matrix_rank(QMatrix m, std::size_t ncols) { return row_reduce(m, ncols).size(); }

std::vector<QVec> nullspace(QMatrix m, std::size_t ncols) {
  auto pivots = row_reduce(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(ncols);
    v[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve_linear(QMatrix a, const QVec& b, std::size_t ncols) {
  if (a.size() != b.size()) throw DimensionMismatch("right-hand side has wrong length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto pivots = row_reduce(a, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  QVec x(ncols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][ncols];
  return x;
}

}  // namespace toda
