#include "toda/nil_daha.hpp"

#include <functional>

#include "toda/parallel.hpp"

namespace toda {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::vector<MultiPoly> level_substitution(const RootDatum& d, const ExtAffineElt& g, const Rational& level) {
  std::size_t n = d.nvars();
  std::vector<MultiPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    IVec v = d.ext_affine_act(g, e);
    Rational constant = Rational(v.back()) * level;
    v.back() = 0;
    if (i + 1 == n) v.back() = 1;  // hbar itself is left alone
    images.push_back(MultiPoly::linear(std::span<const long>(v), i + 1 == n ? Rational() : constant));
  }
  return images;
}

}  // namespace

MultiPoly act_on_poly(const RootDatum& d, const ExtAffineElt& g, const MultiPoly& f) {
  if (f.is_constant()) return f;
  auto images = d.substitution(g);
  return substitute_linear(f, images);
}

OreFraction act_on_fraction(const RootDatum& d, const ExtAffineElt& g, const OreFraction& f, const Rational&) {
  if (f.is_zero()) return f;
  MultiPoly num = act_on_poly(d, g, f.scaled_numerator());
  std::vector<OreFactor> den;
  den.reserve(f.denominator().size());
  Rational scale(1);
  for (const OreFactor& fac : f.denominator()) {
    IVec v = fac.coroot;
    v.push_back(-fac.shift);
    IVec moved = d.ext_affine_act(g, v);
    long hbar = moved.back();
    moved.pop_back();
    auto s = d.make_ore_factor(moved, -hbar);
    scale *= s.scale;
    den.push_back(std::move(s.factor));
  }
  return OreFraction::make(num * scale.inverse(), std::move(den));
}

LevelFraction act_on_fraction(const RootDatum& d, const ExtAffineElt& g, const LevelFraction& f,
                              const Rational& level) {
  if (f.is_zero()) return f;
  MultiPoly num = f.scaled_numerator();
  if (!num.is_constant()) num = substitute_linear(num, level_substitution(d, g, level));
  std::vector<LevelFactor> den;
  den.reserve(f.denominator().size());
  Rational scale(1);
  for (const LevelFactor& fac : f.denominator()) {
    IVec v = fac.coroot;
    v.push_back(0);
    IVec moved = d.ext_affine_act(g, v);
    Rational constant = Rational(moved.back()) * level;
    moved.pop_back();
    auto s = normalize_factor(moved, fac.shift - constant);
    scale *= s.scale;
    den.push_back(std::move(s.factor));
  }
  return LevelFraction::make(num * scale.inverse(), std::move(den));
}

// --- generators ------------------------------------------------------------------

DahaElt daha_one(const DatumPtr& d) { return daha_poly(d, MultiPoly::constant(d->nvars(), 1)); }

DahaElt daha_poly(const DatumPtr& d, const MultiPoly& f) {
  if (f.nvars() != d->nvars() && !f.is_zero()) throw DimensionMismatch("polynomial has wrong variable count");
  DahaElt x(d);
  x.add_term(d->ext_identity(), OreFraction(f.is_zero() ? MultiPoly(d->nvars()) : f));
  return x;
}

DahaElt daha_group(const DatumPtr& d, const ExtAffineElt& g) {
  DahaElt x(d);
  x.add_term(g, OreFraction(MultiPoly::constant(d->nvars(), 1)));
  return x;
}

MultiPoly affine_coroot_poly(const RootDatum& d, std::size_t i) {
  if (i >= d.affine_simple_roots().size())
    throw NotSimpleAffineRoot("affine simple root index " + std::to_string(i) + " out of range for " + d.label());
  const auto& a = d.affine_simple_roots()[i];
  IVec v = a.coroot;
  v.push_back(a.coroot_hbar);
  return MultiPoly::linear(std::span<const long>(v));
}

OreFraction inverse_affine_coroot(const RootDatum& d, std::size_t i) {
  if (i >= d.affine_simple_roots().size())
    throw NotSimpleAffineRoot("affine simple root index " + std::to_string(i) + " out of range for " + d.label());
  const auto& a = d.affine_simple_roots()[i];
  auto s = d.make_ore_factor(a.coroot, -a.coroot_hbar);
  return OreFraction::make(MultiPoly::constant(d.nvars(), s.scale.inverse()), {s.factor});
}

DahaElt daha_theta(const DatumPtr& d, std::size_t i) {
  OreFraction inv = inverse_affine_coroot(*d, i);
  DahaElt x(d);
  x.add_term(d->affine_simple_roots()[i].reflection, inv);
  x.add_term(d->ext_identity(), -inv);
  return x;
}

DahaElt daha_idempotent(const DatumPtr& d) {
  DahaElt x(d);
  Rational c = Rational(1) / Rational(static_cast<long>(d->weyl_order()));
  for (WeylElt w : d->weyl_enumerate()) x.add_term(d->finite(w), OreFraction(MultiPoly::constant(d->nvars(), c)));
  return x;
}

DahaElt daha_generator(const DatumPtr& d, const Generator& g) {
  return std::visit(overloaded{
                        [&](const gen::Poly& p) { return daha_poly(d, p.f); },
                        [&](const gen::Theta& t) { return daha_theta(d, t.affine_index); },
                        [&](const gen::Translate& t) { return daha_group(d, d->translation(t.mu)); },
                        [&](const gen::Weyl& w) {
                          if (w.w.index >= d->weyl_order()) throw Error("Weyl element out of range");
                          return daha_group(d, d->finite(w.w));
                        },
                        [&](const gen::Idempotent&) { return daha_idempotent(d); },
                    },
                    g);
}

DahaElt daha_mul(const DahaElt& x, const DahaElt& y) { return x * y; }

// --- standard module -------------------------------------------------------------

MultiPoly daha_act_poly(const DahaElt& x, const MultiPoly& f) {
  const RootDatum& d = *x.datum();
  OreFraction acc(d.nvars());
  for (const auto& [g, c] : x.terms()) acc += c * OreFraction(act_on_poly(d, g, f));
  auto p = acc.as_polynomial();
  if (!p) throw DenominatorNotCleared("action on " + f.str(d.variable_names()) + " leaves " + acc.str(d.variable_names()));
  return *p;
}

MultiPoly generator_act_poly(const DatumPtr& d, const Generator& g, const MultiPoly& f) {
  return std::visit(
      overloaded{
          [&](const gen::Poly& p) { return p.f * f; },
          [&](const gen::Theta& t) {
            MultiPoly a = affine_coroot_poly(*d, t.affine_index);
            MultiPoly s = act_on_poly(*d, d->affine_simple_roots()[t.affine_index].reflection, f);
            auto q = try_divide(s - f, a);
            if (!q) throw DenominatorNotCleared("divided difference does not clear on " + f.str(d->variable_names()));
            return *q;
          },
          [&](const gen::Translate& t) { return act_on_poly(*d, d->translation(t.mu), f); },
          [&](const gen::Weyl& w) { return act_on_poly(*d, d->finite(w.w), f); },
          [&](const gen::Idempotent&) {
            MultiPoly acc(d->nvars());
            for (WeylElt w : d->weyl_enumerate()) acc += act_on_poly(*d, d->finite(w), f);
            return acc * (Rational(1) / Rational(static_cast<long>(d->weyl_order())));
          },
      },
      g);
}

DahaElt word_element(const DatumPtr& d, const GeneratorWord& w) {
  DahaElt x = daha_one(d);
  for (const auto& g : w) x = x * daha_generator(d, g);
  return x;
}

MultiPoly word_act_poly(const DatumPtr& d, const GeneratorWord& w, const MultiPoly& f) {
  MultiPoly p = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = generator_act_poly(d, *it, p);
  return p;
}

std::string generator_label(const RootDatum& d, const Generator& g) {
  return std::visit(overloaded{
                        [&](const gen::Poly& p) { return "(" + p.f.str(d.variable_names()) + ")"; },
                        [&](const gen::Theta& t) {
                          return std::string("theta_") + d.affine_simple_roots().at(t.affine_index).label;
                        },
                        [&](const gen::Translate& t) { return "e^" + to_string(std::span<const long>(t.mu)); },
                        [&](const gen::Weyl& w) {
                          std::string s = "s";
                          for (std::size_t i : d.word(w.w)) s += std::to_string(i + 1);
                          return w.w.index == 0 ? std::string("1") : s;
                        },
                        [&](const gen::Idempotent&) { return std::string("e"); },
                    },
                    g);
}

// --- structure ---------------------------------------------------------------------

DahaElt spherical_project(const DahaElt& x) {
  DahaElt e = daha_idempotent(x.datum());
  return e * x * e;
}

LevelDahaElt specialize_hbar(const DahaElt& x, const Rational& c) {
  const RootDatum& d = *x.datum();
  LevelDahaElt out(x.datum(), c);
  std::size_t h = d.hbar_index();
  for (const auto& [g, f] : x.terms()) {
    if (c.is_zero() && !f.is_polynomial())
      throw DenominatorVanishes("specialization at hbar = 0 needs a denominator-free element");
    std::vector<LevelFactor> den;
    Rational scale(1);
    for (const OreFactor& fac : f.denominator()) {
      auto s = normalize_factor(fac.coroot, Rational(fac.shift) * c);
      scale *= s.scale;
      den.push_back(std::move(s.factor));
    }
    MultiPoly num = f.scaled_numerator().substitute_value(h, c) * scale.inverse();
    out.add_term(g, LevelFraction::make(std::move(num), std::move(den)));
  }
  return out;
}

std::map<int, DahaElt> degree_decompose(const DahaElt& x) {
  std::map<int, DahaElt> parts;
  for (const auto& [g, f] : x.terms()) {
    int shift = -static_cast<int>(f.denominator().size());
    for (auto& [deg, p] : f.scaled_numerator().homogeneous_parts()) {
      auto it = parts.try_emplace(deg + shift, DahaElt(x.datum())).first;
      it->second.add_term(g, OreFraction::make(p, f.denominator()));
    }
  }
  return parts;
}

std::optional<int> filtration_level(const DahaElt& x) {
  auto parts = degree_decompose(x);
  if (parts.empty()) return std::nullopt;
  return parts.rbegin()->first;
}

std::vector<MultiPoly> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<MultiPoly> out;
  Exponents e(nvars, 0);
  // Enumerate exponent vectors degree by degree.
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == nvars) {
        e[i] = static_cast<std::uint16_t>(left);
        out.push_back(MultiPoly::monomial(e, Rational(1)));
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        e[i] = static_cast<std::uint16_t>(k);
        rec(i + 1, left - k);
      }
    };
    if (nvars == 0) break;
    rec(0, deg);
  }
  return out;
}

std::optional<MultiPoly> distinguish(const DahaElt& x, const DahaElt& y, unsigned max_degree) {
  for (const auto& m : monomials_up_to(x.datum()->nvars(), max_degree))
    if (daha_act_poly(x, m) != daha_act_poly(y, m)) return m;
  return std::nullopt;
}

// --- presentation ------------------------------------------------------------------

bool PresentationReport::all_pass() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationCheck& r) { return r.passed(); });
}

namespace {

// A relation  sum_k c_k word_k = 0 , checked by both routes.
struct Relation {
  std::string name;
  std::string kind;
  std::vector<std::pair<Rational, GeneratorWord>> terms;
};

RelationCheck check_relation(const DatumPtr& d, const Relation& rel, const std::vector<MultiPoly>& monomials) {
  RelationCheck out;
  out.name = rel.name;
  out.kind = rel.kind;
  const auto& names = d->variable_names();

  DahaElt total(d);
  for (const auto& [c, w] : rel.terms) total += word_element(d, w) * c;
  out.element_ok = total.is_zero();
  if (!out.element_ok) out.counterexample = "element residue " + total.str();

  std::vector<std::string> failures(monomials.size());
  parallel_for(monomials.size(), [&](std::size_t k) {
    MultiPoly acc(d->nvars());
    for (const auto& [c, w] : rel.terms) acc += word_act_poly(d, w, monomials[k]) * c;
    if (!acc.is_zero()) failures[k] = "on " + monomials[k].str(names) + " residue " + acc.str(names);
  });
  out.monomials_checked = monomials.size();
  out.action_ok = true;
  for (const auto& f : failures) {
    if (f.empty()) continue;
    out.action_ok = false;
    if (out.counterexample.empty()) out.counterexample = f;
    break;
  }
  return out;
}

}  // namespace

PresentationReport verify_presentation(const DatumPtr& d, unsigned max_degree, bool throw_on_failure) {
  PresentationReport report;
  report.type = d->label();
  report.degree = max_degree;
  auto monomials = monomials_up_to(d->nvars(), max_degree);
  const auto& roots = d->affine_simple_roots();
  std::vector<Relation> relations;

  for (std::size_t i = 0; i < roots.size(); ++i) {
    gen::Theta t{i};
    relations.push_back({"theta_" + roots[i].label + "^2 = 0", "square", {{Rational(1), {t, t}}}});
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      auto m = d->braid_order(i, j);
      std::string pair = roots[i].label + "," + roots[j].label;
      if (!m) {
        report.skipped.push_back(pair);
        continue;
      }
      GeneratorWord left, right;
      for (int k = 0; k < *m; ++k) {
        left.push_back(gen::Theta{k % 2 == 0 ? i : j});
        right.push_back(gen::Theta{k % 2 == 0 ? j : i});
      }
      relations.push_back({"braid(" + pair + "), m = " + std::to_string(*m), "braid",
                           {{Rational(1), left}, {Rational(-1), right}}});
      GeneratorWord pl, pr;
      for (int k = 0; k < *m; ++k) {
        pl.insert(pl.end(), {gen::Theta{i}, gen::Theta{j}});
        pr.insert(pr.end(), {gen::Theta{j}, gen::Theta{i}});
      }
      relations.push_back({"(theta_" + roots[i].label + " theta_" + roots[j].label + ")^" + std::to_string(*m) +
                               " = (theta_" + roots[j].label + " theta_" + roots[i].label + ")^" + std::to_string(*m),
                           "braid_power", {{Rational(1), pl}, {Rational(-1), pr}}});
    }
  }
  const auto& names = d->variable_names();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t k = 0; k < d->nvars(); ++k) {
      MultiPoly h = MultiPoly::variable(d->nvars(), k);
      MultiPoly sh = act_on_poly(*d, roots[i].reflection, h);
      long pairing = k < d->dim() ? roots[i].finite_part[k] : 0;
      Relation r{"theta_" + roots[i].label + " s(" + names[k] + ") - " + names[k] + " theta_" + roots[i].label +
                     " = " + std::to_string(pairing),
                 "commutation",
                 {{Rational(1), {gen::Theta{i}, gen::Poly{sh}}},
                  {Rational(-1), {gen::Poly{h}, gen::Theta{i}}}}};
      if (pairing != 0) r.terms.push_back({Rational(-pairing), {}});
      relations.push_back(std::move(r));
    }
  }
  for (const auto& rel : relations) {
    report.relations.push_back(check_relation(d, rel, monomials));
    const auto& last = report.relations.back();
    if (throw_on_failure && !last.passed())
      throw RelationFailed(last.name + " fails for " + d->label() + ": " + last.counterexample);
  }
  return report;
}

}  // namespace toda
