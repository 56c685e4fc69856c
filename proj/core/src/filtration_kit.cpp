#include "toda/filtration_kit.hpp"

#include <algorithm>
#include <sstream>

#include "toda/nil_daha.hpp"
#include "toda/parallel.hpp"
#include "toda/torus_diffops.hpp"

namespace toda {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

// --- windows -----------------------------------------------------------------------

std::optional<long> FilteredColumn::at(int j) const {
  if (dims.empty()) return bounded_below && stable_above ? std::optional<long>(0) : std::nullopt;
  if (j < lo) return bounded_below ? std::optional<long>(0) : std::nullopt;
  if (j > hi()) return stable_above ? std::optional<long>(dims.back()) : std::nullopt;
  return dims[static_cast<std::size_t>(j - lo)];
}

bool GradedFilteredWindow::monotone() const {
  for (const auto& [d, c] : columns) {
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
      if (c.dims[k] < 0) return false;
      if (k > 0 && c.dims[k] < c.dims[k - 1]) return false;
    }
  }
  return true;
}

GradedFilteredWindow kazhdan_regrade(const GradedFilteredWindow& win, std::optional<std::pair<int, int>> n_range) {
  GradedFilteredWindow out;
  for (const auto& [d, c] : win.columns) {
    FilteredColumn r;
    r.bounded_below = c.bounded_below;
    r.stable_above = c.stable_above;
    int n_lo = 2 * c.lo + d, n_hi = 2 * c.hi() + d + 1;
    if (n_range) {
      n_lo = n_range->first;
      n_hi = n_range->second;
    }
    r.lo = n_lo;
    for (int n = n_lo; n <= n_hi; ++n) {
      auto v = c.at(floor_div(n - d, 2));
      if (!v)
        throw WindowTooSmall("degree " + std::to_string(d) + " column does not determine F_" + std::to_string(n));
      r.dims.push_back(*v);
    }
    out.columns.emplace(d, std::move(r));
  }
  return out;
}

GradedFilteredWindow kazhdan_unregrade(const GradedFilteredWindow& win) {
  GradedFilteredWindow out;
  for (const auto& [d, c] : win.columns) {
    FilteredColumn e;
    e.bounded_below = c.bounded_below;
    e.stable_above = c.stable_above;
    if (c.dims.empty()) {
      out.columns.emplace(d, e);
      continue;
    }
    int j_lo = ceil_div(c.lo - d, 2), j_hi = floor_div(c.hi() - d, 2);
    // Levels inside the window must come in equal pairs (2j + d, 2j + d + 1).
    for (int n = c.lo; n <= c.hi(); ++n) {
      int partner = ((n - d) % 2 == 0) ? n + 1 : n - 1;
      if (partner < c.lo || partner > c.hi()) continue;
      if (*c.at(n) != *c.at(partner))
        throw NotKazhdanRegraded("degree " + std::to_string(d) + " differs between F_" + std::to_string(n) + " and F_" +
                                 std::to_string(partner));
    }
    e.lo = j_lo;
    for (int j = j_lo; j <= j_hi; ++j) e.dims.push_back(*c.at(2 * j + d));
    out.columns.emplace(d, std::move(e));
  }
  return out;
}

std::optional<int> lowest_nonzero_level(const GradedFilteredWindow& win) {
  std::optional<int> best;
  for (const auto& [d, c] : win.columns) {
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
      if (c.dims[k] == 0) continue;
      int n = c.lo + static_cast<int>(k);
      if (!best || n < *best) best = n;
      break;
    }
  }
  return best;
}

std::string window_csv(const GradedFilteredWindow& win) {
  std::ostringstream os;
  os << "degree,level,dim\n";
  for (const auto& [d, c] : win.columns)
    for (std::size_t k = 0; k < c.dims.size(); ++k) os << d << "," << c.lo + static_cast<int>(k) << "," << c.dims[k] << "\n";
  return os.str();
}

// --- good filtrations ----------------------------------------------------------------

FiltrationWindow good_filtration_window(const std::vector<std::pair<QVec, int>>& generators,
                                        const AlgebraWindow& algebra, int p_lo, int p_hi) {
  FiltrationWindow out;
  out.lo = p_lo;
  std::size_t n = algebra.module_dim;
  // Images a . x_i, tagged with the level at which they enter.
  std::vector<std::pair<int, QVec>> images;
  for (const auto& [x, level] : generators) {
    if (x.size() != n) throw DimensionMismatch("generator has wrong dimension");
    for (std::size_t a = 0; a < algebra.levels.size(); ++a) {
      int enters = algebra.levels[a] + level;
      if (enters > p_hi) continue;
      images.emplace_back(enters, algebra.act(a, x));
    }
  }
  for (int p = p_lo; p <= p_hi; ++p) {
    QMatrix rows;
    for (const auto& [lvl, v] : images)
      if (lvl <= p) rows.push_back(v);
    out.dims.push_back(static_cast<long>(matrix_rank(rows, n)));
  }
  return out;
}

namespace {

// Coordinates of classical D(T) elements in the basis x^a e^mu.
class DtCoordinates {
 public:
  std::size_t index(const IVec& mu, const Exponents& e) {
    auto key = std::make_pair(mu, e);
    auto it = idx_.find(key);
    if (it != idx_.end()) return it->second;
    std::size_t i = idx_.size();
    idx_.emplace(std::move(key), i);
    return i;
  }
  std::vector<std::pair<std::size_t, Rational>> sparse(const DtElt& x) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [mu, f] : x.terms())
      for (const auto& [e, c] : f.terms()) out.emplace_back(index(mu, e), c);
    return out;
  }
  std::size_t size() const { return idx_.size(); }

 private:
  std::map<std::pair<IVec, Exponents>, std::size_t> idx_;
};

long sparse_rank(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& rows, std::size_t ncols) {
  QMatrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    QVec v(ncols);
    for (const auto& [i, c] : r) v[i] += c;
    m.push_back(std::move(v));
  }
  return static_cast<long>(matrix_rank(std::move(m), ncols));
}

std::vector<IVec> translation_window(const RootDatum& d, long bound) {
  std::vector<IVec> box;
  std::size_t n = d.dim();
  IVec mu(n, -bound);
  if (n == 0) return {IVec()};
  while (true) {
    box.push_back(mu);
    std::size_t i = 0;
    while (i < n && mu[i] == bound) mu[i++] = -bound;
    if (i == n) break;
    ++mu[i];
  }
  // Keep only full W-orbits inside the box.
  std::vector<IVec> out;
  for (const auto& m : box) {
    bool closed = true;
    for (WeylElt w : d.weyl_enumerate()) {
      IVec im = d.act_weight(w, m);
      if (std::any_of(im.begin(), im.end(), [&](long v) { return v > bound || v < -bound; })) {
        closed = false;
        break;
      }
    }
    if (closed) out.push_back(m);
  }
  return out;
}

}  // namespace

QuotientFiltrationComparison hc_quotient_filtration(const InfChar& nu, int p_max, long mu_bound) {
  if (!nu.non_integral) throw IntegralParameter("quotient filtration comparison needs a non-integral parameter");
  const DatumPtr& d = nu.datum;
  std::size_t nv = d->nvars();
  auto window = translation_window(*d, mu_bound);
  auto monos = monomials_up_to(nv - 1, static_cast<unsigned>(std::max(p_max, 0)));

  // Filtered spanning set of D(T)^W: W-averages of x^a e^mu.
  struct Spanning {
    int level;
    DtElt element;
  };
  std::vector<Spanning> span;
  for (const auto& mu : window) {
    for (const auto& m : monos) {
      Exponents e = m.leading_exponents();
      e.push_back(0);
      DtElt x = DtElt::poly(d, MultiPoly::monomial(e, Rational(1)), DtLevel::classical) *
                DtElt::exp(d, mu, DtLevel::classical);
      span.push_back({static_cast<int>(total_degree(e)), dt_weyl_invariants(x).average});
    }
  }
  auto inv = fundamental_invariants(*d);
  std::vector<DtElt> ideal_gens;
  QVec point = nu.nu_dot;
  point.push_back(Rational(1));
  for (const auto& f : inv.polys)
    ideal_gens.push_back(DtElt::poly(d, f - MultiPoly::constant(nv, f.evaluate(point)), DtLevel::classical));

  QuotientFiltrationComparison out;
  out.direct.lo = out.model.lo = 0;

  DtCoordinates coords;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> span_rows;
  for (const auto& s : span) span_rows.push_back(coords.sparse(s.element));
  std::vector<std::pair<int, std::vector<std::pair<std::size_t, Rational>>>> ideal_rows;
  for (const auto& s : span)
    for (std::size_t k = 0; k < ideal_gens.size(); ++k) {
      int lvl = s.level + inv.degrees[k];
      if (lvl > p_max) continue;
      ideal_rows.emplace_back(lvl, coords.sparse(s.element * ideal_gens[k]));
    }
  for (int p = 0; p <= p_max; ++p) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> a, b;
    for (std::size_t i = 0; i < span.size(); ++i)
      if (span[i].level <= p) a.push_back(span_rows[i]);
    for (const auto& [lvl, row] : ideal_rows)
      if (lvl <= p) b.push_back(row);
    out.direct.dims.push_back(sparse_rank(a, coords.size()) - sparse_rank(b, coords.size()));
  }

  // Weight model: lines e^mu v of the family through nu_dot, mu in the window.
  std::map<IVec, std::size_t> line_index;
  for (const auto& mu : window) line_index.emplace(mu, line_index.size());
  HCWeightModule model = hc_weight_module(nu);
  AlgebraWindow alg;
  alg.module_dim = line_index.size();
  for (const auto& s : span) alg.levels.push_back(s.level);
  alg.act = [&](std::size_t a, const QVec& v) {
    QVec out_v(alg.module_dim);
    for (const auto& [lam, li] : line_index) {
      if (v[li].is_zero()) continue;
      for (const auto& [mu, f] : span[a].element.terms()) {
        HCWeightModule::Line target = model.exp_action({0, lam}, mu);
        auto it = line_index.find(target.mu);
        if (it == line_index.end()) continue;  // leaves the window
        out_v[it->second] += v[li] * model.left_poly_action(target, f);
      }
    }
    return out_v;
  };
  QVec x(alg.module_dim);
  x[line_index.at(IVec(d->dim(), 0))] = Rational(1);
  out.model = good_filtration_window({{x, 0}}, alg, 0, p_max);
  return out;
}

// --- invariants --------------------------------------------------------------------

namespace {

MultiPoly coweight_form(const QVec& xi, std::size_t nvars) {
  QVec c = xi;
  c.resize(nvars);
  return MultiPoly::linear(std::span<const Rational>(c));
}

// e_k of the given linear forms.
std::vector<MultiPoly> elementary_symmetric(const std::vector<MultiPoly>& xs, std::size_t nvars) {
  std::vector<MultiPoly> e(xs.size() + 1, MultiPoly(nvars));
  e[0] = MultiPoly::constant(nvars, 1);
  for (const auto& x : xs)
    for (std::size_t k = xs.size(); k >= 1; --k) e[k] += e[k - 1] * x;
  return e;
}

}  // namespace

InvariantGenerators fundamental_invariants(const RootDatum& d) {
  InvariantGenerators out;
  std::size_t nv = d.nvars();
  auto coweights = center_coweights(d);
  for (const auto& f : d.factors()) {
    // eps_1 = fundamental coweight 1 of the factor, eps_{i+1} = s_i eps_i.
    std::vector<QVec> eps{coweights[f.offset]};
    int count = f.type == 'A' ? f.rank + 1 : f.rank;
    for (int i = 1; i < count && f.type != 'G'; ++i)
      eps.push_back(d.act_coweight(d.simple_reflection(f.offset + i - 1), eps.back()));
    std::vector<MultiPoly> forms;
    for (const auto& v : eps) forms.push_back(coweight_form(v, nv));
    switch (f.type) {
      case 'A': {
        auto e = elementary_symmetric(forms, nv);
        for (int k = 2; k <= f.rank + 1; ++k) {
          out.polys.push_back(e[k]);
          out.degrees.push_back(k);
        }
        break;
      }
      case 'B':
      case 'C':
      case 'D': {
        int top = f.type == 'D' ? f.rank - 1 : f.rank;
        for (int k = 1; k <= top; ++k) {
          MultiPoly p(nv);
          for (const auto& x : forms) p += x.pow(2 * k);
          out.polys.push_back(p);
          out.degrees.push_back(2 * k);
        }
        if (f.type == 'D') {
          MultiPoly prod = MultiPoly::constant(nv, 1);
          for (const auto& x : forms) prod = prod * x;
          out.polys.push_back(prod);
          out.degrees.push_back(f.rank);
        }
        break;
      }
      case 'G': {
        std::vector<QVec> orbit;
        for (WeylElt w : d.weyl_enumerate()) {
          QVec v = d.act_coweight(w, coweights[f.offset]);
          if (std::find(orbit.begin(), orbit.end(), v) == orbit.end()) orbit.push_back(v);
        }
        for (int k : {2, 6}) {
          MultiPoly p(nv);
          for (const auto& v : orbit) p += coweight_form(v, nv).pow(static_cast<unsigned>(k));
          out.polys.push_back(p);
          out.degrees.push_back(k);
        }
        break;
      }
      default:
        throw UnsupportedType("no invariants for this factor");
    }
  }
  for (std::size_t k = 0; k < d.torus_rank(); ++k) {
    out.polys.push_back(MultiPoly::variable(nv, d.rank() + k));
    out.degrees.push_back(1);
  }
  return out;
}

// --- Koszul ---------------------------------------------------------------------------

namespace {

using Mask = unsigned;

int mask_weight(Mask s, const std::vector<int>& degrees) {
  int w = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (s & (1u << i)) w += degrees[i];
  return w;
}

int popcount(Mask s) { return __builtin_popcount(s); }

// Sign of inserting / removing generator i relative to the lower members of s.
int koszul_sign(Mask s, std::size_t i) { return (popcount(s & ((1u << i) - 1)) % 2 == 0) ? 1 : -1; }

// Products of ring generators with weighted degree <= bound, indexed by weighted degree.
class RingMonomials {
 public:
  RingMonomials(const std::vector<MultiPoly>& gens, const std::vector<int>& degrees, int bound, std::size_t nvars) {
    std::vector<int> exps(gens.size(), 0);
    std::function<void(std::size_t, int, const MultiPoly&)> rec = [&](std::size_t i, int deg, const MultiPoly& p) {
      if (i == gens.size()) {
        items_.emplace_back(deg, p);
        return;
      }
      MultiPoly q = p;
      for (int e = 0; deg + e * degrees[i] <= bound; ++e) {
        rec(i + 1, deg + e * degrees[i], q);
        q = q * gens[i];
      }
    };
    rec(0, 0, MultiPoly::constant(nvars, 1));
  }
  const std::vector<std::pair<int, MultiPoly>>& items() const { return items_; }

 private:
  std::vector<std::pair<int, MultiPoly>> items_;
};

// Vectors in R^{subsets}, coordinates (subset, monomial of Sym(t)).
using Chain = std::map<Mask, MultiPoly>;

class ChainCoordinates {
 public:
  std::vector<std::pair<std::size_t, Rational>> sparse(const Chain& c) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [s, p] : c)
      for (const auto& [e, coef] : p.terms()) {
        auto key = std::make_pair(s, e);
        auto it = idx_.try_emplace(key, idx_.size()).first;
        out.emplace_back(it->second, coef);
      }
    return out;
  }
  std::size_t size() const { return idx_.size(); }

 private:
  std::map<std::pair<Mask, Exponents>, std::size_t> idx_;
};

void add_to(Chain& c, Mask s, const MultiPoly& p) {
  auto [it, inserted] = c.try_emplace(s, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) c.erase(it);
  } else if (p.is_zero()) {
    c.erase(it);
  }
}

// Homological differential: e_S -> sum_{i in S} sign u_i e_{S - i}.
Chain boundary(const Chain& c, const std::vector<MultiPoly>& u) {
  Chain out;
  for (const auto& [s, p] : c)
    for (std::size_t i = 0; i < u.size(); ++i)
      if (s & (1u << i)) add_to(out, s & ~(1u << i), p * u[i] * Rational(koszul_sign(s, i)));
  return out;
}

// Dual differential: e*_S -> sum_{i not in S} sign u_i e*_{S + i}.
Chain coboundary(const Chain& c, const std::vector<MultiPoly>& u) {
  Chain out;
  for (const auto& [s, p] : c)
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!(s & (1u << i))) add_to(out, s | (1u << i), p * u[i] * Rational(koszul_sign(s, i)));
  return out;
}

struct Ranks {
  std::vector<long> dim;       // dim of degree-k piece
  std::vector<long> rank_out;  // rank of the differential leaving degree k
};

// Homology dimensions of a filtered (co)chain complex. weight(S) is the
// filtration weight of basis element S; coefficients have degree <= D - weight.
std::vector<long> filtered_homology(std::size_t r, const std::vector<MultiPoly>& u, const RingMonomials& ring, int D,
                                    const std::function<int(Mask)>& weight, bool cohomological) {
  std::vector<long> dims(r + 1, 0), rank_out(r + 1, 0);
  for (std::size_t k = 0; k <= r; ++k) {
    ChainCoordinates here, there;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows, images;
    for (Mask s = 0; s < (1u << r); ++s) {
      if (static_cast<std::size_t>(popcount(s)) != k) continue;
      int room = D - weight(s);
      if (room < 0) continue;
      for (const auto& [deg, m] : ring.items()) {
        if (deg > room) continue;
        Chain c{{s, m}};
        rows.push_back(here.sparse(c));
        Chain img = cohomological ? coboundary(c, u) : boundary(c, u);
        images.push_back(there.sparse(img));
      }
    }
    dims[k] = sparse_rank(rows, here.size());
    rank_out[k] = images.empty() ? 0 : sparse_rank(images, there.size());
  }
  std::vector<long> h(r + 1, 0);
  for (std::size_t k = 0; k <= r; ++k) {
    long incoming = 0;
    if (cohomological) {
      if (k > 0) incoming = rank_out[k - 1];
    } else {
      if (k < r) incoming = rank_out[k + 1];
    }
    h[k] = dims[k] - rank_out[k] - incoming;
  }
  return h;
}

}  // namespace

KoszulReport koszul_check_generators(const RootDatum& d, const std::vector<MultiPoly>& ring_gens,
                                     const std::vector<int>& degrees, const QVec& values, unsigned max_degree,
                                     bool throw_on_failure) {
  std::size_t r = ring_gens.size();
  if (degrees.size() != r || values.size() != r) throw DimensionMismatch("generator data of unequal lengths");
  if (r > 16) throw Error("too many Koszul generators");
  std::size_t nv = d.nvars();
  KoszulReport rep;
  rep.type = d.label();
  rep.degrees = degrees;
  rep.max_degree = max_degree;
  std::vector<MultiPoly> u;
  for (std::size_t i = 0; i < r; ++i) u.push_back(ring_gens[i] - MultiPoly::constant(nv, values[i]));

  // d o d = 0 on every basis element, for both complexes.
  rep.d_squared_zero = true;
  for (Mask s = 0; s < (1u << r); ++s) {
    Chain c{{s, MultiPoly::constant(nv, 1)}};
    if (!boundary(boundary(c, u), u).empty() || !coboundary(coboundary(c, u), u).empty()) rep.d_squared_zero = false;
  }

  RingMonomials ring(ring_gens, degrees, static_cast<int>(max_degree), nv);
  auto hom_weight = [&](Mask s) { return mask_weight(s, degrees); };
  Mask full = r == 0 ? 0 : (1u << r) - 1;
  auto dual_weight = [&](Mask s) { return mask_weight(full & ~s, degrees); };

  rep.homology.assign(max_degree + 1, {});
  parallel_for(max_degree + 1, [&](std::size_t D) {
    rep.homology[D] = filtered_homology(r, u, ring, static_cast<int>(D), hom_weight, false);
  });
  rep.exact = true;
  for (unsigned D = 0; D <= max_degree; ++D) {
    const auto& h = rep.homology[D];
    bool ok = h[0] == 1;
    for (std::size_t k = 1; k <= r; ++k) ok = ok && h[k] == 0;
    if (!ok && rep.exact) {
      rep.exact = false;
      rep.failing_degree = D;
    }
  }
  rep.ext_dims = filtered_homology(r, u, ring, static_cast<int>(max_degree), dual_weight, true);
  rep.ext_concentrated = rep.ext_dims[r] == 1;
  for (std::size_t k = 0; k < r; ++k) rep.ext_concentrated = rep.ext_concentrated && rep.ext_dims[k] == 0;
  if (throw_on_failure && !rep.exact)
    throw NotExact("Koszul complex is not exact at filtration degree " + std::to_string(*rep.failing_degree));
  if (throw_on_failure && !rep.d_squared_zero) throw NotExact("Koszul differential does not square to zero");
  return rep;
}

KoszulReport koszul_check(const InfChar& nu, unsigned max_degree, bool throw_on_failure) {
  const RootDatum& d = *nu.datum;
  auto inv = fundamental_invariants(d);
  QVec point = nu.nu_dot;
  point.push_back(Rational(1));
  QVec values;
  for (const auto& f : inv.polys) values.push_back(f.evaluate(point));
  KoszulReport rep = koszul_check_generators(d, inv.polys, inv.degrees, values, max_degree, throw_on_failure);
  rep.nu_dot = nu.nu_dot;
  return rep;
}

}  // namespace toda
