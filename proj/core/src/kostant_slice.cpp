#include "toda/kostant_slice.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "toda/errors.hpp"
#include "toda/parallel.hpp"

namespace toda {

// --- matrices ----------------------------------------------------------------------

QMatrix identity_matrix(std::size_t n) {
  QMatrix m(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  QMatrix out(n, QVec(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

QMatrix mat_add(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

QMatrix mat_scale(const QMatrix& a, const Rational& c) {
  QMatrix out = a;
  for (auto& row : out)
    for (auto& v : row) v *= c;
  return out;
}

Rational trace(const QMatrix& a) {
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

Rational determinant(QMatrix a) {
  std::size_t n = a.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Rational inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      Rational f = a[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

QMatrix mat_inverse(const QMatrix& a) {
  std::size_t n = a.size();
  QMatrix aug(n, QVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rational(1);
  }
  auto pivots = row_reduce(aug, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw NotInvertible("matrix is singular");
  QMatrix out(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::string matrix_str(const QMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < a[i].size(); ++j) os << (j ? "," : "") << a[i][j].str();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool MatElt::satisfies_kind() const {
  switch (kind) {
    case MatKind::SL: return determinant(m) == Rational(1);
    case MatKind::GL: return !determinant(m).is_zero();
    case MatKind::sl: return trace(m).is_zero();
    case MatKind::gl: return true;
  }
  return false;
}

// Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k.
QVec char_poly(const QMatrix& a) {
  std::size_t n = a.size();
  QVec c(n);
  QMatrix m(n, QVec(n));
  Rational prev(1);
  for (std::size_t k = 1; k <= n; ++k) {
    m = mat_mul(a, m);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += prev;
    prev = -trace(mat_mul(a, m)) / Rational(static_cast<long>(k));
    c[k - 1] = prev;
  }
  return c;
}

QMatrix principal_e(std::size_t n) {
  QMatrix e(n, QVec(n));
  for (std::size_t i = 0; i + 1 < n; ++i) e[i + 1][i] = Rational(1);
  return e;
}

QMatrix principal_f(std::size_t n) {
  QMatrix f(n, QVec(n));
  for (std::size_t i = 0; i + 1 < n; ++i) f[i][i + 1] = Rational(static_cast<long>((i + 1) * (n - i - 1)));
  return f;
}

// --- slice ---------------------------------------------------------------------------

namespace {

bool is_algebra(MatKind k) { return k == MatKind::sl || k == MatKind::gl; }

// f^0, ..., f^{n-1}.
std::vector<QMatrix> f_powers(std::size_t n) {
  std::vector<QMatrix> out{identity_matrix(n)};
  QMatrix f = principal_f(n);
  for (std::size_t k = 1; k < n; ++k) out.push_back(mat_mul(out.back(), f));
  return out;
}

QMatrix slice_matrix(std::size_t n, const QVec& a, std::size_t first) {
  QMatrix x = principal_e(n);
  auto powers = f_powers(n);
  for (std::size_t k = first; k < n; ++k) x = mat_add(x, mat_scale(powers[k], a[k]));
  return x;
}

}  // namespace

std::size_t slice_dimension(MatKind algebra, std::size_t n) { return algebra == MatKind::sl ? n - 1 : n; }

SlicePoint slice_point(MatKind algebra, std::size_t n, const QVec& coeffs) {
  if (!is_algebra(algebra)) throw BadCoefficients("slice points live in sl_n or gl_n");
  if (n == 0 || (algebra == MatKind::sl && n < 2)) throw BadCoefficients("matrix size too small");
  QVec c = coeffs;
  if (algebra == MatKind::sl) {
    if (c.size() == n - 1) {
      c.insert(c.begin(), Rational(0));
    } else if (c.size() != n) {
      throw BadCoefficients("expected " + std::to_string(n - 1) + " coefficients, got " + std::to_string(c.size()));
    }
    if (!c[0].is_zero()) throw BadCoefficients("sl_n needs a traceless characteristic polynomial");
  } else if (c.size() != n) {
    throw BadCoefficients("expected " + std::to_string(n) + " coefficients, got " + std::to_string(c.size()));
  }
  std::size_t first = algebra == MatKind::sl ? 1 : 0;
  // c_{k+1} is affine in a_k once a_0..a_{k-1} are fixed and does not see a_{k+1}, ...
  QVec a(n);
  for (std::size_t k = first; k < n; ++k) {
    a[k] = Rational(0);
    Rational v0 = char_poly(slice_matrix(n, a, first))[k];
    a[k] = Rational(1);
    Rational slope = char_poly(slice_matrix(n, a, first))[k] - v0;
    if (slope.is_zero()) throw BadCoefficients("slice coordinate does not move the characteristic polynomial");
    a[k] = (c[k] - v0) / slope;
  }
  SlicePoint sp;
  sp.kind = algebra;
  sp.matrix = slice_matrix(n, a, first);
  sp.slice_coords.assign(a.begin() + static_cast<long>(first), a.end());
  sp.char_coeffs = char_poly(sp.matrix);
  if (sp.char_coeffs != c) throw BadCoefficients("slice solve did not reproduce the characteristic polynomial");
  return sp;
}

bool in_slice(MatKind algebra, const QMatrix& x) {
  std::size_t n = x.size();
  for (const auto& row : x)
    if (row.size() != n) return false;
  // x - e in the span of f^k: one column per power, one row per entry.
  QMatrix diff = mat_add(x, mat_scale(principal_e(n), Rational(-1)));
  auto powers = f_powers(n);
  std::size_t first = algebra == MatKind::sl ? 1 : 0;
  QMatrix a;
  QVec b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QVec row;
      for (std::size_t k = first; k < n; ++k) row.push_back(powers[k][i][j]);
      a.push_back(std::move(row));
      b.push_back(diff[i][j]);
    }
  return solve_linear(std::move(a), b, n - first).has_value();
}

bool big_cell_test(const QMatrix& g) {
  std::size_t n = g.size();
  if (determinant(g).is_zero()) throw NotInvertible("big-cell test needs an invertible matrix");
  for (std::size_t k = 1; k < n; ++k) {
    QMatrix minor(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = g[n - k + i][j];
    if (determinant(minor).is_zero()) return false;
  }
  return true;
}

// --- fibers ----------------------------------------------------------------------------

std::string GroupSpec::str() const { return (special ? "SL" : "GL") + std::to_string(n); }

GroupSpec parse_group(const std::string& s) {
  if (s.size() == 3 && (s.rfind("SL", 0) == 0 || s.rfind("GL", 0) == 0) && s[2] >= '1' && s[2] <= '4') {
    GroupSpec g{s[0] == 'S', static_cast<std::size_t>(s[2] - '0')};
    if (!(g.special && g.n == 1)) return g;
  }
  throw UnsupportedGroup("unsupported group '" + s + "' (expected SL2..SL4 or GL1..GL4)");
}

namespace {

// Univariate polynomials, coefficients from the constant term up.
using UPoly = QVec;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

// Quotient and remainder.
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly monic(UPoly p) {
  trim(p);
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Multiplicity of every root (with repetition over distinct roots), by Yun's algorithm.
std::vector<unsigned> root_multiplicities(const QVec& char_coeffs) {
  std::size_t n = char_coeffs.size();
  UPoly f(n + 1);
  f[n] = Rational(1);
  for (std::size_t k = 0; k < n; ++k) f[n - 1 - k] = char_coeffs[k];
  std::vector<unsigned> out;
  if (n == 0) return out;
  UPoly a = gcd(f, derivative(f));
  UPoly b = divmod(f, a).first;
  for (unsigned i = 1; b.size() > 1; ++i) {
    UPoly c = gcd(a, b);
    UPoly y = divmod(b, c).first;
    for (std::size_t r = 1; r < y.size(); ++r) out.push_back(i);
    a = divmod(a, c).first;
    b = c;
  }
  return out;
}

QMatrix poly_of_matrix(const QVec& q, const QMatrix& x) {
  std::size_t n = x.size();
  QMatrix out(n, QVec(n)), power = identity_matrix(n);
  for (const auto& c : q) {
    out = mat_add(out, mat_scale(power, c));
    power = mat_mul(power, x);
  }
  return out;
}

QMatrix mat_pow(const QMatrix& a, std::size_t k) {
  QMatrix out = identity_matrix(a.size());
  for (std::size_t i = 0; i < k; ++i) out = mat_mul(out, a);
  return out;
}

// An element of the identity component of the centralizer of x lying in the
// big cell: q(x) for GL, q(x)^n / det q(x) for SL, q over small integers.
std::optional<QMatrix> identity_component_witness(const QMatrix& x, bool special) {
  std::size_t n = x.size();
  std::vector<long> q(n, -2);
  while (true) {
    QVec qv(q.begin(), q.end());
    QMatrix m = poly_of_matrix(qv, x);
    Rational d = determinant(m);
    if (!d.is_zero()) {
      QMatrix u = special ? mat_scale(mat_pow(m, n), d.inverse()) : m;
      if (big_cell_test(u)) return u;
    }
    std::size_t i = 0;
    while (i < n && q[i] == 2) q[i++] = -2;
    if (i == n) return std::nullopt;
    ++q[i];
  }
}

}  // namespace

FiberReport fiber_vs_big_cell(const QVec& nu, const GroupSpec& group) {
  FiberReport rep;
  rep.group = group;
  rep.nu = nu;
  rep.point = slice_point(group.special ? MatKind::sl : MatKind::gl, group.n, nu);
  const QMatrix& x = rep.point.matrix;
  rep.root_multiplicities = root_multiplicities(rep.point.char_coeffs);
  // Centralizer of a regular x is Q[x]^x; inside SL_n the condition
  // prod a_j^{m_j} = 1 on eigenvalue values leaves gcd(m_j) components, permuted
  // transitively by the center mu_n.
  unsigned g = 1;
  if (group.special) {
    g = 0;
    for (unsigned m : rep.root_multiplicities) g = std::gcd(g, m);
  }
  rep.components = g;
  auto u = identity_component_witness(x, group.special);
  if (!u) throw ComponentMissesBigCell("no big-cell element found in the identity component for " + group.str());
  bool commutes = mat_mul(*u, x) == mat_mul(x, *u);
  Rational det = determinant(*u);
  for (unsigned k = 0; k < g; ++k) {
    ComponentWitness w;
    w.component = k;
    // zeta = exp(2 pi i k / n) satisfies zeta^{n/g} = exp(2 pi i k / g).
    w.root_order = k == 0 ? 1 : static_cast<unsigned>(group.n);
    w.root_exponent = k;
    w.u = *u;
    w.commutes = commutes;
    w.in_group = group.special ? det == Rational(1) : !det.is_zero();
    // Corner minors of zeta u are zeta^k times those of u.
    w.in_big_cell = big_cell_test(*u);
    if (k == 0) {
      w.element = *u;
    } else if (2 * k == group.n) {
      w.element = mat_scale(*u, Rational(-1));
      w.in_big_cell = big_cell_test(*w.element);
      w.commutes = mat_mul(*w.element, x) == mat_mul(x, *w.element);
      w.in_group = determinant(*w.element) == Rational(1);
    }
    if (!w.in_big_cell) throw ComponentMissesBigCell("component " + std::to_string(k) + " misses the big cell");
    rep.witnesses.push_back(std::move(w));
  }
  rep.all_meet_big_cell = std::all_of(rep.witnesses.begin(), rep.witnesses.end(),
                                      [](const ComponentWitness& w) { return w.in_big_cell; });
  return rep;
}

// --- big-cell parametrization ------------------------------------------------------

QMatrix w0_representative(std::size_t n) {
  QMatrix w(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i) w[i][n - 1 - i] = Rational(i % 2 == 0 ? 1 : -1);
  return w;
}

namespace {

bool in_e_plus_b(const QMatrix& x) {
  QMatrix e = principal_e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (x[i][j] != e[i][j]) return false;
  return true;
}

// Upper unipotent n with n y = x n.
QMatrix conjugator_to(const QMatrix& x, const QMatrix& y) {
  std::size_t n = x.size();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) unknowns.emplace_back(i, j);
  std::size_t nu = unknowns.size();
  QMatrix a;
  QVec b;
  // (n y - x n)_{rc} = sum_l n_{rl} y_{lc} - sum_l x_{rl} n_{lc}; n_{ll} = 1 goes to the right side.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      QVec row(nu);
      for (std::size_t u = 0; u < nu; ++u) {
        auto [i, j] = unknowns[u];
        if (i == r) row[u] += y[j][c];
        if (j == c) row[u] -= x[r][i];
      }
      a.push_back(std::move(row));
      b.push_back(x[r][c] - y[r][c]);
    }
  auto sol = solve_linear(std::move(a), b, nu);
  if (!sol) throw Error("no unipotent conjugator to the slice");
  QMatrix m = identity_matrix(n);
  for (std::size_t u = 0; u < nu; ++u) m[unknowns[u].first][unknowns[u].second] = (*sol)[u];
  return m;
}

QMatrix diagonal(const QVec& d) {
  QMatrix m(d.size(), QVec(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

}  // namespace

BigCellPair big_cell_pair(const QVec& h, const QVec& t) {
  std::size_t n = h.size();
  if (n < 2 || t.size() != n) throw BadCoefficients("torus data of mismatched size");
  Rational prod(1), sum;
  for (std::size_t i = 0; i < n; ++i) {
    if (h[i].is_zero()) throw BadCoefficients("torus element has a zero entry");
    prod *= h[i];
    sum += t[i];
  }
  if (prod != Rational(1) || !sum.is_zero()) throw BadCoefficients("(h, t) must lie in SL_n and sl_n");
  BigCellPair p;
  p.h = h;
  p.t = t;
  QMatrix e = principal_e(n);
  p.g = mat_mul(mat_inverse(w0_representative(n)), diagonal(h));
  QMatrix g_inv = mat_inverse(p.g);
  p.x = mat_add(mat_add(e, diagonal(t)), mat_mul(mat_mul(g_inv, e), p.g));
  QMatrix adx = mat_mul(mat_mul(p.g, p.x), g_inv);
  p.x_in_e_plus_b = in_e_plus_b(p.x);
  p.adx_in_e_plus_b = in_e_plus_b(adx);
  // Both x and Ad(g)x are conjugate under N to the same slice point y.
  p.y = slice_point(MatKind::sl, n, char_poly(p.x)).matrix;
  QMatrix n1 = conjugator_to(p.x, p.y);
  QMatrix n2 = conjugator_to(adx, p.y);
  p.g_normalized = mat_mul(mat_mul(mat_inverse(n2), p.g), n1);
  p.y_in_slice = in_slice(MatKind::sl, p.y);
  p.centralizes = mat_mul(p.g_normalized, p.y) == mat_mul(p.y, p.g_normalized);
  p.g_in_big_cell = big_cell_test(p.g);
  p.normalized_in_big_cell = big_cell_test(p.g_normalized);
  return p;
}

BigCellBatch big_cell_samples(std::size_t n, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](bool nonzero) {
    long num;
    do {
      num = static_cast<long>(rng() % 19) - 9;
    } while (nonzero && num == 0);
    long den = static_cast<long>(rng() % 5) + 1;
    return Rational(num, den);
  };
  std::vector<std::pair<QVec, QVec>> inputs;
  for (std::size_t s = 0; s < samples; ++s) {
    QVec h, t;
    Rational prod(1), sum;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h.push_back(draw(true));
      prod *= h.back();
      t.push_back(draw(false));
      sum += t.back();
    }
    h.push_back(prod.inverse());
    t.push_back(-sum);
    inputs.emplace_back(std::move(h), std::move(t));
  }
  std::vector<BigCellPair> results(samples);
  parallel_for(samples, [&](std::size_t i) { results[i] = big_cell_pair(inputs[i].first, inputs[i].second); });
  BigCellBatch batch;
  batch.n = n;
  batch.samples = samples;
  for (auto& r : results) {
    if (r.ok()) {
      ++batch.passed;
    } else {
      batch.failures.push_back(std::move(r));
    }
  }
  return batch;
}

}  // namespace toda
