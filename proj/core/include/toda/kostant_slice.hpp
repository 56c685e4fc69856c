#pragma once

// Exact matrix computations for sl_n / gl_n: the Kostant slice e + g_f with e
// lower and f upper triangular, the characteristic map, centralizers of slice
// points and the open Bruhat cell B w0 B (B upper triangular).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toda/exact_algebra.hpp"

namespace toda {

enum class MatKind { SL, GL, sl, gl };

struct MatElt {
  MatKind kind = MatKind::gl;
  QMatrix m;

  std::size_t n() const { return m.size(); }
  // det = 1 for SL, invertible for GL, trace 0 for sl.
  bool satisfies_kind() const;
};

QMatrix identity_matrix(std::size_t n);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
QMatrix mat_add(const QMatrix& a, const QMatrix& b);
QMatrix mat_scale(const QMatrix& a, const Rational& c);
Rational trace(const QMatrix& a);
Rational determinant(QMatrix a);
// Throws NotInvertible.
QMatrix mat_inverse(const QMatrix& a);
std::string matrix_str(const QMatrix& a);

// Coefficients c_1..c_n of det(t - a) = t^n + c_1 t^{n-1} + ... + c_n.
QVec char_poly(const QMatrix& a);

// The principal triple: e = sum E_{i+1,i}, h diagonal, f = sum i(n - i) E_{i,i+1}
// (1-based i). The centralizer of f is spanned by the powers of f.
QMatrix principal_e(std::size_t n);
QMatrix principal_f(std::size_t n);

struct SlicePoint {
  MatKind kind = MatKind::sl;
  QMatrix matrix;
  QVec slice_coords;  // a_k with matrix = e + sum a_k f^k (k from 0 for gl, from 1 for sl)
  QVec char_coeffs;   // c_1..c_n
};

// For sl the coefficients may be given as c_2..c_n or as c_1..c_n with c_1 = 0.
// Throws BadCoefficients.
SlicePoint slice_point(MatKind algebra, std::size_t n, const QVec& coeffs);
bool in_slice(MatKind algebra, const QMatrix& x);
std::size_t slice_dimension(MatKind algebra, std::size_t n);

// All lower-left k x k corner minors nonzero, k = 1..n-1. Throws NotInvertible.
bool big_cell_test(const QMatrix& g);

// --- fibers of the universal centralizer -------------------------------------------

struct GroupSpec {
  bool special = true;
  std::size_t n = 2;
  std::string str() const;
};
// "SL2", "SL3", "SL4", "GL1".."GL4"; throws UnsupportedGroup.
GroupSpec parse_group(const std::string& s);

// A component element zeta * u with zeta = exp(2 pi i exponent / order) a
// central scalar (order 1 means zeta = 1) and u rational.
struct ComponentWitness {
  std::size_t component = 0;
  unsigned root_order = 1;
  unsigned root_exponent = 0;
  QMatrix u;
  std::optional<QMatrix> element;  // zeta * u when zeta = +-1
  bool in_big_cell = false;
  bool commutes = false;
  bool in_group = false;
};

struct FiberReport {
  GroupSpec group;
  QVec nu;  // characteristic coefficients as given
  SlicePoint point;
  std::vector<unsigned> root_multiplicities;  // multiplicities of the eigenvalues of the slice point
  std::size_t components = 0;
  std::vector<ComponentWitness> witnesses;
  bool all_meet_big_cell = false;
};

// Throws ComponentMissesBigCell if some component has no witness in the search range.
FiberReport fiber_vs_big_cell(const QVec& nu, const GroupSpec& group);

// --- big-cell parametrization ------------------------------------------------------

// Signed antidiagonal representative of w0, determinant 1.
QMatrix w0_representative(std::size_t n);

struct BigCellPair {
  QVec h;  // diagonal of the torus element
  QVec t;  // diagonal of the Cartan element
  QMatrix x, g;               // (e + t + Ad(g)^{-1} e, w0^{-1} h)
  QMatrix y, g_normalized;    // moved to the slice: y = n^{-1} x n, Ad(g_normalized) y = y
  bool x_in_e_plus_b = false;
  bool adx_in_e_plus_b = false;
  bool y_in_slice = false;
  bool centralizes = false;
  bool g_in_big_cell = false;
  bool normalized_in_big_cell = false;
  bool ok() const {
    return x_in_e_plus_b && adx_in_e_plus_b && y_in_slice && centralizes && g_in_big_cell && normalized_in_big_cell;
  }
};

BigCellPair big_cell_pair(const QVec& h, const QVec& t);

struct BigCellBatch {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::vector<BigCellPair> failures;
};
// Random h in the diagonal torus of SL_n and t in its Cartan subalgebra.
BigCellBatch big_cell_samples(std::size_t n, std::size_t samples, std::uint64_t seed);

}  // namespace toda
