#pragma once

// Root data of (simply connected semisimple) x (torus), Weyl groups and the
// extended affine Weyl group W ⋉ X*(T).
//
// Coordinates. t has basis (simple coroots, torus basis); t* has the dual basis
// (fundamental weights, dual torus basis), so X*(T) is the integer lattice in
// t* coordinates and <lambda, xi> is the plain dot product. t_aff = t + Q.hbar
// is stored as a vector of length dim()+1 with hbar last.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toda/exact_algebra.hpp"

namespace toda {

class RootDatum;
using DatumPtr = std::shared_ptr<const RootDatum>;

struct WeylElt {
  std::uint32_t index = 0;  // 0 is the identity
  friend auto operator<=>(const WeylElt&, const WeylElt&) = default;
};

struct ExtAffineElt {
  IVec translation;  // mu in X*(T), weight coordinates
  WeylElt finite;
  friend auto operator<=>(const ExtAffineElt&, const ExtAffineElt&) = default;
};

struct AffineSimpleRoot {
  IVec finite_part;    // alpha_i, or -theta for an affine node (weight coordinates)
  int delta = 0;       // 0 for finite simple roots, 1 for delta - theta
  IVec coroot;         // t-part of the affine coroot (coroot coordinates)
  long coroot_hbar = 0;  // hbar coefficient of the affine coroot
  ExtAffineElt reflection;
  std::size_t factor = 0;  // simple factor this root belongs to
  std::string label;
};

struct SimpleFactor {
  char type = 'A';
  int rank = 0;
  std::size_t offset = 0;  // index of its first simple root
};

class RootDatum {
 public:
  // Accepts products such as "A2", "A1xT1", "B2×A1", "G2*T2".
  static DatumPtr build(std::string_view spec);

  const std::string& label() const { return label_; }
  std::size_t rank() const { return cartan_.size(); }
  std::size_t torus_rank() const { return torus_rank_; }
  std::size_t dim() const { return rank() + torus_rank_; }
  std::size_t nvars() const { return dim() + 1; }
  std::size_t hbar_index() const { return dim(); }
  const std::vector<SimpleFactor>& factors() const { return factors_; }

  // a_ij = <alpha_i^vee, alpha_j>
  const std::vector<IVec>& cartan() const { return cartan_; }
  IVec simple_root(std::size_t i) const;
  IVec simple_coroot(std::size_t i) const;

  // Positive roots in weight coordinates, with their coroots (same index) in
  // coroot coordinates.
  const std::vector<IVec>& positive_roots() const { return pos_roots_; }
  const std::vector<IVec>& positive_coroots() const { return pos_coroots_; }
  const IVec& highest_root(std::size_t factor) const { return highest_[factor]; }
  const IVec& highest_root_coroot(std::size_t factor) const { return highest_coroot_[factor]; }
  const IVec& rho() const { return rho_; }
  const QVec& rho_check() const { return rho_check_; }

  // Weyl group
  std::size_t weyl_order() const { return elements_.size(); }
  std::vector<WeylElt> weyl_enumerate() const;
  WeylElt identity() const { return WeylElt{0}; }
  WeylElt simple_reflection(std::size_t i) const;
  WeylElt longest() const { return longest_; }
  const std::vector<std::size_t>& word(WeylElt w) const { return elements_.at(w.index).word; }
  std::size_t length(WeylElt w) const { return word(w).size(); }
  WeylElt mul(WeylElt a, WeylElt b) const;
  WeylElt inverse(WeylElt w) const { return WeylElt{elements_.at(w.index).inverse}; }
  WeylElt from_word(const std::vector<std::size_t>& word) const;
  // Reflection in a positive root (index into positive_roots()).
  WeylElt root_reflection(std::size_t positive_index) const;
  const std::vector<IVec>& weight_matrix(WeylElt w) const { return elements_.at(w.index).on_weights; }
  const std::vector<IVec>& coweight_matrix(WeylElt w) const { return elements_.at(w.index).on_coweights; }

  IVec act_weight(WeylElt w, const IVec& lambda) const;
  QVec act_weight(WeylElt w, const QVec& lambda) const;
  IVec act_coweight(WeylElt w, const IVec& xi) const;
  QVec act_coweight(WeylElt w, const QVec& xi) const;

  // Extended affine Weyl group
  ExtAffineElt ext_identity() const { return ExtAffineElt{IVec(dim(), 0), identity()}; }
  ExtAffineElt translation(const IVec& mu) const;
  ExtAffineElt finite(WeylElt w) const { return ExtAffineElt{IVec(dim(), 0), w}; }
  ExtAffineElt mul(const ExtAffineElt& a, const ExtAffineElt& b) const;
  ExtAffineElt inverse(const ExtAffineElt& g) const;
  // Action on t_aff (length nvars, hbar last): w linear fixing hbar, then
  // t_mu: xi -> xi + <mu, xi> hbar.
  QVec ext_affine_act(const ExtAffineElt& g, const QVec& v) const;
  IVec ext_affine_act(const ExtAffineElt& g, const IVec& v) const;
  // Affine action on t*: (mu, w) . lambda = w lambda + mu.
  QVec ext_affine_act_dual(const ExtAffineElt& g, const QVec& lambda) const;
  // The substitution realizing g on Sym(t_aff): variable i -> image of basis vector i.
  std::vector<MultiPoly> substitution(const ExtAffineElt& g) const;

  // Affine simple roots: the finite simple roots first (in order), then one
  // delta - theta per simple factor.
  const std::vector<AffineSimpleRoot>& affine_simple_roots() const { return affine_; }
  // m_ij for affine simple roots i, j; nullopt when the order is infinite.
  std::optional<int> braid_order(std::size_t i, std::size_t j) const;

  // Checks that (coroot, shift) normalizes to  alpha^vee - c hbar  for a
  // genuine coroot; returns the normalized factor with its scale.
  Scaled<OreFactor> make_ore_factor(const IVec& coroot, long shift) const;
  bool is_coroot(const IVec& coroot) const;

  // Variable names for printing: a1..ar, z1..zk, h.
  const std::vector<std::string>& variable_names() const { return names_; }

 private:
  struct ElementData {
    std::vector<std::size_t> word;
    std::vector<IVec> on_weights;
    std::vector<IVec> on_coweights;
    std::uint32_t inverse = 0;
  };

  RootDatum() = default;
  void add_factor(char type, int rank);
  void finalize();
  void enumerate_roots();
  void enumerate_weyl();
  void build_affine();
  std::uint32_t lookup(const std::vector<IVec>& on_weights) const;

  std::string label_;
  std::size_t torus_rank_ = 0;
  std::vector<SimpleFactor> factors_;
  std::vector<IVec> cartan_;
  std::vector<std::size_t> factor_of_;
  std::vector<IVec> pos_roots_;
  std::vector<IVec> pos_coroots_;
  std::vector<IVec> highest_;
  std::vector<IVec> highest_coroot_;
  IVec rho_;
  QVec rho_check_;
  std::vector<ElementData> elements_;
  std::map<IVec, std::uint32_t> index_of_;
  std::vector<std::uint32_t> mul_table_;  // filled for small groups
  WeylElt longest_;
  std::vector<AffineSimpleRoot> affine_;
  std::vector<std::string> names_;
};

// Cartan matrix entry used to decide braid orders: a_ij a_ji -> m_ij.
std::optional<int> braid_order_from_product(long product);

}  // namespace toda
