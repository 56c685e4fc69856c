#include "toda/toda_modules.hpp"

#include <algorithm>

#include "toda/nil_daha.hpp"

namespace toda {

QVec fractional_part(const QVec& v) {
  QVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.frac());
  return out;
}

bool is_integral_vector(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
}

InfChar classify_parameter(const DatumPtr& d, const QVec& nu_dot) {
  if (nu_dot.size() != d->dim())
    throw DimensionMismatch("parameter has " + std::to_string(nu_dot.size()) + " coordinates, expected " +
                            std::to_string(d->dim()));
  InfChar c;
  c.datum = d;
  c.nu_dot = nu_dot;
  c.non_integral = true;
  for (const auto& co : d->positive_coroots())
    if (dot(nu_dot, std::span<const long>(co)).is_integer()) {
      c.non_integral = false;
      break;
    }
  c.regular = true;
  bool first = true;
  for (WeylElt w : d->weyl_enumerate()) {
    QVec image = d->act_weight(w, nu_dot);
    if (std::find(c.orbit.begin(), c.orbit.end(), image) == c.orbit.end()) c.orbit.push_back(image);
    QVec f = fractional_part(image);
    if (first || f < c.block_id) c.block_id = f;
    first = false;
    if (w.index == 0) continue;
    QVec diff = image;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= nu_dot[i];
    if (is_integral_vector(diff)) c.regular = false;
  }
  if (c.regular && !c.non_integral) throw Error("regular parameter " + to_string(nu_dot) + " is integral");
  return c;
}

bool same_block(const InfChar& a, const InfChar& b) {
  if (a.datum->label() != b.datum->label()) throw DatumMismatch("parameters for different root data");
  for (const auto& p : a.orbit) {
    QVec diff = p;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b.nu_dot[i];
    if (is_integral_vector(diff)) return true;
  }
  return false;
}

// --- weight model -------------------------------------------------------------

QVec HCWeightModule::weight(const Line& l) const {
  QVec w = bases_.at(l.family);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += Rational(l.mu.at(i));
  return w;
}

Rational HCWeightModule::xi_eigenvalue(const Line& l, const QVec& xi) const { return dot(weight(l), xi); }

HCWeightModule::Line HCWeightModule::exp_action(const Line& l, const IVec& lambda) const {
  Line out = l;
  for (std::size_t i = 0; i < out.mu.size(); ++i) out.mu[i] += lambda.at(i);
  return out;
}

namespace {

Rational evaluate_at(const MultiPoly& p, const QVec& point) {
  QVec full = point;
  full.push_back(Rational(1));  // hbar = 1
  return p.evaluate(full);
}

}  // namespace

Rational HCWeightModule::left_poly_action(const Line& l, const MultiPoly& p) const { return evaluate_at(p, weight(l)); }

Rational HCWeightModule::right_poly_action(const Line& l, const MultiPoly& p) const {
  return evaluate_at(p, bases_.at(l.family));
}

bool HCWeightModule::supports_meet(std::size_t i, std::size_t j) const {
  QVec diff = bases_.at(i);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= bases_.at(j)[k];
  return is_integral_vector(diff);
}

HCWeightModule hc_weight_module(const InfChar& nu) {
  if (!nu.non_integral)
    throw IntegralParameter("parameter " + to_string(nu.nu_dot) + " is integral; the weight model is not certified there");
  return HCWeightModule(nu, nu.orbit);
}

SimplicityCertificate simplicity_certificate(const InfChar& nu) {
  HCWeightModule m = hc_weight_module(nu);
  SimplicityCertificate cert;
  cert.regular_flag = nu.regular;
  cert.certified = true;
  for (std::size_t i = 0; i < m.families() && cert.certified; ++i) {
    for (std::size_t j = i + 1; j < m.families(); ++j) {
      if (m.supports_meet(i, j)) {
        cert.certified = false;
        cert.witness = m.family_base(i);
        cert.witness_families = std::make_pair(i, j);
        break;
      }
    }
  }
  // Distinct orbit points only: a stabilized parameter would also be non-regular.
  if (m.families() != nu.datum->weyl_order()) cert.certified = false;
  return cert;
}

WeightModelCheck check_weight_model(const HCWeightModule& m, long mu_bound, const std::vector<MultiPoly>& central) {
  const RootDatum& d = *m.parameter().datum;
  std::size_t dim = d.dim(), nv = d.nvars();
  WeightModelCheck out;
  QVec at_nu = m.parameter().nu_dot;
  at_nu.push_back(Rational(1));
  for (std::size_t fam = 0; fam < m.families(); ++fam) {
    IVec mu(dim, -mu_bound);
    while (true) {
      HCWeightModule::Line l{fam, mu};
      ++out.lines_checked;
      for (std::size_t i = 0; i < dim; ++i) {
        MultiPoly xi = MultiPoly::variable(nv, i);
        for (std::size_t j = 0; j < dim; ++j) {
          IVec lambda(dim, 0);
          lambda[j] = 1;
          Rational comm = m.left_poly_action(m.exp_action(l, lambda), xi) - m.left_poly_action(l, xi);
          Rational expected(i == j ? 1 : 0);
          if (comm != expected) {
            ++out.relation_failures;
            out.counterexamples.push_back("[xi_" + std::to_string(i + 1) + ", e^varpi_" + std::to_string(j + 1) +
                                          "] fails on family " + std::to_string(fam) + " at mu " +
                                          to_string(std::span<const long>(mu)));
          }
        }
      }
      for (const auto& f : central) {
        if (m.right_poly_action(l, f) != f.evaluate(at_nu)) {
          ++out.central_failures;
          out.counterexamples.push_back("central element " + f.str(d.variable_names()) + " is not constant on family " +
                                        std::to_string(fam));
        }
      }
      std::size_t k = 0;
      while (k < dim && mu[k] == mu_bound) mu[k++] = -mu_bound;
      if (k == dim) break;
      ++mu[k];
    }
  }
  return out;
}

MultiPoly factored_poly(const RootDatum& d, const FactoredElement& u) {
  MultiPoly p = MultiPoly::constant(d.nvars(), u.scale);
  for (const auto& f : u.factors) {
    if (f.coroot.size() != d.dim()) throw DimensionMismatch("factor has wrong dimension");
    p = p * f.poly(d.nvars());
  }
  return p;
}

Rational scalar_of_ore_denominator(const FactoredElement& u, const InfChar& nu) {
  const RootDatum& d = *nu.datum;
  MultiPoly p = factored_poly(d, u);
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (act_on_poly(d, d.finite(d.simple_reflection(i)), p) != p)
      throw NotWeylInvariant("element is not W-invariant under s" + std::to_string(i + 1));
  Rational c = u.scale;
  for (const auto& f : u.factors) c *= dot(nu.nu_dot, std::span<const long>(f.coroot)) - f.shift;
  if (c.is_zero()) throw ZeroScalar("element vanishes at " + to_string(nu.nu_dot));
  return c;
}

long kazhdan_degree_bi_invariant(const RootDatum& d, const IVec& lambda) {
  if (lambda.size() != d.dim()) throw DimensionMismatch("weight has wrong dimension");
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (lambda[i] < 0) throw NotDominant("weight " + to_string(std::span<const long>(lambda)) + " is not dominant");
  Rational v = dot(d.rho_check(), std::span<const long>(lambda)) * Rational(-4);
  return v.to_long();
}

}  // namespace toda
