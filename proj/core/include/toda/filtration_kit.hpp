#pragma once

// Finite windows of graded filtered objects, the Kazhdan regrading
// (F_n E)(d) = E_{<= floor((n - d)/2)}(d), good filtrations generated by
// elements at fixed levels, and Koszul complexes over Sym(t)^W.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toda/exact_algebra.hpp"
#include "toda/root_data.hpp"
#include "toda/toda_modules.hpp"

namespace toda {

// One graded piece: dims[k] = dim of level lo + k. Below lo the level is zero
// when bounded_below, above lo + dims.size() - 1 it equals the last entry when
// stable_above; otherwise those levels are unknown.
struct FilteredColumn {
  int lo = 0;
  std::vector<long> dims;
  bool bounded_below = true;
  bool stable_above = true;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  // Dimension at level j, or nullopt if the window does not determine it.
  std::optional<long> at(int j) const;
  friend bool operator==(const FilteredColumn&, const FilteredColumn&) = default;
};

struct GradedFilteredWindow {
  std::map<int, FilteredColumn> columns;  // degree -> filtration column
  bool monotone() const;
  friend bool operator==(const GradedFilteredWindow&, const GradedFilteredWindow&) = default;
};

// Regrades every column onto n in [2 lo + d, 2 hi + d + 1]. When n_range is
// given, every column must be determined there, else WindowTooSmall.
GradedFilteredWindow kazhdan_regrade(const GradedFilteredWindow& win,
                                     std::optional<std::pair<int, int>> n_range = std::nullopt);
// E_{<= j}(d) = F_{2j + d}(d). Throws NotKazhdanRegraded when a column is not
// constant on the pairs {2j + d, 2j + d + 1}.
GradedFilteredWindow kazhdan_unregrade(const GradedFilteredWindow& win);
// Least n with F_n nonzero in some degree of the window.
std::optional<int> lowest_nonzero_level(const GradedFilteredWindow& win);

std::string window_csv(const GradedFilteredWindow& win);

// --- good filtrations --------------------------------------------------------------

// A filtered spanning set of an algebra acting on a finite-dimensional
// coordinate space (a truncation window of a module).
struct AlgebraWindow {
  std::vector<int> levels;  // level of each spanning element
  std::size_t module_dim = 0;
  std::function<QVec(std::size_t element, const QVec& v)> act;
};

struct FiltrationWindow {
  int lo = 0;
  std::vector<long> dims;  // dims[k] = dim F_{lo + k}
  friend bool operator==(const FiltrationWindow&, const FiltrationWindow&) = default;
};

// F_p M = sum_i F_{p - n_i} A . x_i for p in [p_lo, p_hi].
FiltrationWindow good_filtration_window(const std::vector<std::pair<QVec, int>>& generators,
                                        const AlgebraWindow& algebra, int p_lo, int p_hi);

// Two computations of the quotient filtration on W/W m_nu (order filtration,
// translations in a bounded window), for a non-integral parameter:
//  direct:  dim F_p A - dim (F_{p-deg} A . m_nu) in normal-form coordinates of D(T)^W;
//  model:   the good filtration generated by the cyclic vector of the weight model.
struct QuotientFiltrationComparison {
  FiltrationWindow direct;
  FiltrationWindow model;
  bool agree() const { return direct == model; }
};
QuotientFiltrationComparison hc_quotient_filtration(const InfChar& nu, int p_max, long mu_bound);

// --- Koszul complexes --------------------------------------------------------------

struct InvariantGenerators {
  std::vector<MultiPoly> polys;  // in Sym(t), no hbar
  std::vector<int> degrees;
};
// Fundamental invariants of Sym(t)^W: elementary symmetric functions for type A,
// even power sums for B/C, power sums and the product of coordinates for D,
// p2 and p6 for G2, coordinates for the torus.
InvariantGenerators fundamental_invariants(const RootDatum& d);

struct KoszulReport {
  std::string type;
  QVec nu_dot;
  std::vector<int> degrees;
  unsigned max_degree = 0;
  bool d_squared_zero = false;
  // homology[D][k] = dim H_k of the complex truncated at filtration degree D
  std::vector<std::vector<long>> homology;
  std::vector<long> ext_dims;  // cohomology of the dual complex at max_degree
  bool exact = false;
  bool ext_concentrated = false;
  std::optional<unsigned> failing_degree;
};

// Generic form: ring generated by ring_gens (weighted by their degrees), complex
// on the elements u_i = ring_gens[i] - values[i].
KoszulReport koszul_check_generators(const RootDatum& d, const std::vector<MultiPoly>& ring_gens,
                                     const std::vector<int>& degrees, const QVec& values, unsigned max_degree,
                                     bool throw_on_failure = false);
KoszulReport koszul_check(const InfChar& nu, unsigned max_degree, bool throw_on_failure = false);

}  // namespace toda
