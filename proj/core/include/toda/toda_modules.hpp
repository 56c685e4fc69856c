#pragma once

// Infinitesimal characters and the Harish-Chandra modules they determine at
// non-integral parameters, modeled as sums of rank-one weight families.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toda/exact_algebra.hpp"
#include "toda/root_data.hpp"

namespace toda {

struct InfChar {
  DatumPtr datum;
  QVec nu_dot;              // representative in t*, weight coordinates
  std::vector<QVec> orbit;  // W nu_dot, one entry per distinct point, in Weyl enumeration order
  bool non_integral = false;
  bool regular = false;
  QVec block_id;  // lexicographically least fractional part over the orbit
};

InfChar classify_parameter(const DatumPtr& d, const QVec& nu_dot);
bool same_block(const InfChar& a, const InfChar& b);

QVec fractional_part(const QVec& v);
bool is_integral_vector(const QVec& v);

// D(T)/D(T) m_{nu_w} for each orbit point nu_w: basis lines e^mu v_w of weight
// nu_w + mu. xi acts by <nu_w + mu, xi>, e^lambda shifts mu, and the right
// action of Sym(t) on the cyclic vector (well defined because Sym(t) is
// commutative) is evaluation at nu_w.
class HCWeightModule {
 public:
  struct Line {
    std::size_t family = 0;
    IVec mu;
    friend auto operator<=>(const Line&, const Line&) = default;
  };

  HCWeightModule(InfChar nu, std::vector<QVec> bases) : nu_(std::move(nu)), bases_(std::move(bases)) {}

  const InfChar& parameter() const { return nu_; }
  std::size_t families() const { return bases_.size(); }
  const QVec& family_base(std::size_t i) const { return bases_.at(i); }

  QVec weight(const Line& l) const;
  // xi in t-coordinates.
  Rational xi_eigenvalue(const Line& l, const QVec& xi) const;
  Line exp_action(const Line& l, const IVec& lambda) const;
  // Left action of a polynomial in the t-variables (hbar = 1): evaluation at the weight.
  Rational left_poly_action(const Line& l, const MultiPoly& p) const;
  // Right action on the cyclic vector of the family.
  Rational right_poly_action(const Line& l, const MultiPoly& p) const;
  // Whether some weight lies in the supports of both families.
  bool supports_meet(std::size_t i, std::size_t j) const;

 private:
  InfChar nu_;
  std::vector<QVec> bases_;
};

// Throws IntegralParameter unless nu is non-integral.
HCWeightModule hc_weight_module(const InfChar& nu);

struct SimplicityCertificate {
  bool certified = false;
  bool regular_flag = false;
  std::optional<QVec> witness;  // a weight in two supports
  std::optional<std::pair<std::size_t, std::size_t>> witness_families;
  bool consistent() const { return certified == regular_flag; }
};
SimplicityCertificate simplicity_certificate(const InfChar& nu);

// Over all lines with |mu_i| <= mu_bound: [xi, e^lambda] = <lambda, xi> e^lambda
// for xi and lambda running over coordinate bases (xi acting as a polynomial),
// and every central polynomial acts on the right by its value at nu_dot.
struct WeightModelCheck {
  std::size_t lines_checked = 0;
  std::size_t relation_failures = 0;
  std::size_t central_failures = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return relation_failures == 0 && central_failures == 0; }
};
WeightModelCheck check_weight_model(const HCWeightModule& m, long mu_bound, const std::vector<MultiPoly>& central);

// A product  scale * prod (coroot . xi - shift)  at hbar = 1; coroots may carry
// any sign and need not be primitive.
struct FactoredElement {
  Rational scale = Rational(1);
  std::vector<LevelFactor> factors;
};
MultiPoly factored_poly(const RootDatum& d, const FactoredElement& u);
// Throws NotWeylInvariant if u is not W-invariant and ZeroScalar if the value vanishes.
Rational scalar_of_ore_denominator(const FactoredElement& u, const InfChar& nu);

// -<lambda, 4 rho_check>; throws NotDominant.
long kazhdan_degree_bi_invariant(const RootDatum& d, const IVec& lambda);

}  // namespace toda
