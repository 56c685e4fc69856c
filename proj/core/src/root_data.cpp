#include "toda/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace toda {

namespace {

constexpr std::size_t kMaxWeylOrder = 50000;
constexpr std::size_t kMulTableLimit = 1200;

using Matrix = std::vector<IVec>;

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix c(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long x = a[i][k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += x * b[k][j];
    }
  return c;
}

IVec apply(const Matrix& m, const IVec& v) {
  IVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

QVec apply(const Matrix& m, const QVec& v) {
  QVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0) out[i] += Rational(m[i][j]) * v[j];
  return out;
}

IVec flatten(const Matrix& m) {
  IVec out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::vector<IVec> cartan_matrix(char type, int n) {
  std::vector<IVec> a(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'G':
      a[0][1] = -3;  // alpha_1 short
      a[1][0] = -1;
      break;
    default:
      throw UnsupportedType(std::string("unsupported Cartan type ") + type);
  }
  return a;
}

}  // namespace

std::optional<int> braid_order_from_product(long product) {
  switch (product) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return std::nullopt;
  }
}

DatumPtr RootDatum::build(std::string_view spec) {
  std::shared_ptr<RootDatum> d(new RootDatum());
  std::string s(spec);
  // Normalize the product separators to a single character.
  for (const std::string sep : {"×", "x", "X", "*"}) {
    std::size_t pos;
    while ((pos = s.find(sep)) != std::string::npos) s.replace(pos, sep.size(), ",");
  }
  std::string token;
  std::vector<std::string> tokens;
  for (char c : s) {
    if (c == ',') {
      tokens.push_back(token);
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token += c;
    }
  }
  tokens.push_back(token);
  for (const auto& t : tokens) {
    if (t.size() < 2 || !std::isalpha(static_cast<unsigned char>(t[0])))
      throw UnsupportedType("cannot parse root datum factor '" + t + "' in '" + std::string(spec) + "'");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw UnsupportedType("cannot parse root datum factor '" + t + "'");
    if (t.size() > 4) throw UnsupportedType("rank too large in '" + t + "'");
    char type = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    int n = std::stoi(t.substr(1));
    bool ok = (type == 'A' && n >= 1) || (type == 'B' && n >= 2) || (type == 'C' && n >= 2) ||
              (type == 'D' && n >= 3) || (type == 'G' && n == 2) || (type == 'T' && n >= 1);
    if (!ok) throw UnsupportedType("unsupported factor '" + t + "'");
    if (type == 'T') {
      d->torus_rank_ += static_cast<std::size_t>(n);
    } else {
      d->add_factor(type, n);
    }
  }
  d->label_ = std::string(spec);
  d->finalize();
  return d;
}

void RootDatum::add_factor(char type, int n) {
  std::size_t offset = cartan_.size();
  factors_.push_back(SimpleFactor{type, n, offset});
  auto a = cartan_matrix(type, n);
  for (auto& row : cartan_) row.resize(offset + n, 0);
  for (int i = 0; i < n; ++i) {
    IVec row(offset + n, 0);
    for (int j = 0; j < n; ++j) row[offset + j] = a[i][j];
    cartan_.push_back(row);
    factor_of_.push_back(factors_.size() - 1);
  }
}

void RootDatum::finalize() {
  for (std::size_t i = 0; i < rank(); ++i) names_.push_back("a" + std::to_string(i + 1));
  for (std::size_t k = 0; k < torus_rank_; ++k) names_.push_back("z" + std::to_string(k + 1));
  names_.push_back("h");
  enumerate_roots();
  enumerate_weyl();
  build_affine();

  // Validation of the cached data.
  for (std::size_t f = 0; f < factors_.size(); ++f)
    if (dot(highest_[f], highest_coroot_[f]) != 2) throw Error("highest root does not pair to 2 with its coroot");
  for (std::size_t i = 0; i < rank(); ++i)
    if (dot(rho_check_, std::span<const long>(simple_root(i))) != Rational(1))
      throw Error("rho_check does not pair to 1 with a simple root");
  if (mul(longest_, longest_) != identity()) throw Error("longest element is not an involution");
  if (act_coweight(longest_, rho_check_) != [&] {
        QVec m = rho_check_;
        for (auto& x : m) x = -x;
        return m;
      }())
    throw Error("longest element does not send rho_check to its negative");
}

IVec RootDatum::simple_root(std::size_t i) const {
  IVec v(dim(), 0);
  for (std::size_t j = 0; j < rank(); ++j) v[j] = cartan_[j][i];
  return v;
}

IVec RootDatum::simple_coroot(std::size_t i) const {
  IVec v(dim(), 0);
  v.at(i) = 1;
  return v;
}

void RootDatum::enumerate_roots() {
  std::size_t r = rank();
  // Roots in simple-root coordinates paired with coroots in simple-coroot coordinates.
  std::set<std::pair<IVec, IVec>> seen;
  std::deque<std::pair<IVec, IVec>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    IVec e(r, 0);
    e[i] = 1;
    queue.emplace_back(e, e);
    seen.emplace(e, e);
  }
  while (!queue.empty()) {
    auto [beta, cobeta] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      long p = 0, q = 0;  // <beta, alpha_i^vee>, <alpha_i, beta^vee>
      for (std::size_t j = 0; j < r; ++j) {
        p += beta[j] * cartan_[i][j];
        q += cobeta[j] * cartan_[j][i];
      }
      IVec nb = beta, nc = cobeta;
      nb[i] -= p;
      nc[i] -= q;
      if (seen.emplace(nb, nc).second) queue.emplace_back(nb, nc);
    }
  }
  std::vector<std::pair<IVec, IVec>> positive;
  for (const auto& [beta, cobeta] : seen)
    if (std::all_of(beta.begin(), beta.end(), [](long x) { return x >= 0; })) positive.emplace_back(beta, cobeta);
  // Order by height, then lexicographically, so simple roots come first.
  std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    long ha = 0, hb = 0;
    for (long x : a.first) ha += x;
    for (long x : b.first) hb += x;
    if (ha != hb) return ha < hb;
    return a.first > b.first;
  });
  highest_.assign(factors_.size(), IVec());
  highest_coroot_.assign(factors_.size(), IVec());
  std::vector<long> best_height(factors_.size(), -1);
  for (const auto& [beta, cobeta] : positive) {
    IVec weight(dim(), 0), co(dim(), 0);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < r; ++i) weight[j] += beta[i] * cartan_[j][i];
      co[j] = cobeta[j];
    }
    pos_roots_.push_back(weight);
    pos_coroots_.push_back(co);
    std::size_t f = 0;
    long h = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (beta[i] != 0) {
        f = factor_of_[i];
        h += beta[i];
      }
    if (h > best_height[f]) {
      best_height[f] = h;
      highest_[f] = weight;
      highest_coroot_[f] = co;
    }
  }
  rho_.assign(dim(), 0);
  for (std::size_t i = 0; i < r; ++i) rho_[i] = 1;
  rho_check_.assign(dim(), Rational());
  for (const auto& co : pos_coroots_)
    for (std::size_t j = 0; j < dim(); ++j) rho_check_[j] += Rational(co[j], 2);
}

void RootDatum::enumerate_weyl() {
  std::size_t n = dim(), r = rank();
  std::vector<Matrix> gens_w, gens_c;
  for (std::size_t i = 0; i < r; ++i) {
    Matrix w = identity_matrix(n), c = identity_matrix(n);
    // (s_i lambda)_j = lambda_j - lambda_i a_ji
    for (std::size_t j = 0; j < r; ++j) w[j][i] -= cartan_[j][i];
    // (s_i xi)_i = xi_i - sum_j a_ji xi_j
    for (std::size_t j = 0; j < r; ++j) c[i][j] -= cartan_[j][i];
    gens_w.push_back(w);
    gens_c.push_back(c);
  }
  elements_.push_back(ElementData{{}, identity_matrix(n), identity_matrix(n), 0});
  index_of_.emplace(flatten(elements_[0].on_weights), 0);
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (std::size_t i = 0; i < r; ++i) {
      Matrix w = matmul(elements_[head].on_weights, gens_w[i]);
      IVec key = flatten(w);
      if (index_of_.count(key)) continue;
      if (elements_.size() >= kMaxWeylOrder)
        throw UnsupportedType("Weyl group of " + label_ + " exceeds " + std::to_string(kMaxWeylOrder) + " elements");
      ElementData e;
      e.word = elements_[head].word;
      e.word.push_back(i);
      e.on_weights = std::move(w);
      e.on_coweights = matmul(elements_[head].on_coweights, gens_c[i]);
      index_of_.emplace(std::move(key), static_cast<std::uint32_t>(elements_.size()));
      elements_.push_back(std::move(e));
    }
  }
  std::size_t order = elements_.size();
  for (std::size_t k = 0; k < order; ++k) {
    // The coweight matrix of w is the inverse transpose of its weight matrix,
    // so the weight matrix of w^{-1} is the transpose of the coweight matrix of w.
    const Matrix& c = elements_[k].on_coweights;
    Matrix t(n, IVec(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i][j] = c[j][i];
    elements_[k].inverse = lookup(t);
  }
  if (order <= kMulTableLimit) {
    mul_table_.resize(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        mul_table_[a * order + b] = lookup(matmul(elements_[a].on_weights, elements_[b].on_weights));
  }
  longest_ = WeylElt{static_cast<std::uint32_t>(order - 1)};
}

std::uint32_t RootDatum::lookup(const std::vector<IVec>& on_weights) const {
  auto it = index_of_.find(flatten(on_weights));
  if (it == index_of_.end()) throw Error("matrix is not in the Weyl group");
  return it->second;
}

std::vector<WeylElt> RootDatum::weyl_enumerate() const {
  std::vector<WeylElt> out;
  out.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) out.push_back(WeylElt{static_cast<std::uint32_t>(i)});
  return out;
}

WeylElt RootDatum::simple_reflection(std::size_t i) const {
  if (i >= rank()) throw NotSimpleAffineRoot("simple reflection index out of range");
  return WeylElt{static_cast<std::uint32_t>(i + 1)};  // BFS order puts s_i right after 1
}

WeylElt RootDatum::mul(WeylElt a, WeylElt b) const {
  std::size_t order = elements_.size();
  if (!mul_table_.empty()) return WeylElt{mul_table_[a.index * order + b.index]};
  return WeylElt{lookup(matmul(elements_.at(a.index).on_weights, elements_.at(b.index).on_weights))};
}

WeylElt RootDatum::from_word(const std::vector<std::size_t>& w) const {
  WeylElt g = identity();
  for (std::size_t i : w) g = mul(g, simple_reflection(i));
  return g;
}

WeylElt RootDatum::root_reflection(std::size_t k) const {
  const IVec& beta = pos_roots_.at(k);
  const IVec& cobeta = pos_coroots_.at(k);
  std::size_t n = dim();
  Matrix m = identity_matrix(n);
  // s(lambda) = lambda - <lambda, beta^vee> beta
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] -= beta[i] * cobeta[j];
  return WeylElt{lookup(m)};
}

IVec RootDatum::act_weight(WeylElt w, const IVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("weight has wrong dimension");
  return apply(weight_matrix(w), v);
}
QVec RootDatum::act_weight(WeylElt w, const QVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("weight has wrong dimension");
  return apply(weight_matrix(w), v);
}
IVec RootDatum::act_coweight(WeylElt w, const IVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("coweight has wrong dimension");
  return apply(coweight_matrix(w), v);
}
QVec RootDatum::act_coweight(WeylElt w, const QVec& v) const {
  if (v.size() != dim()) throw DimensionMismatch("coweight has wrong dimension");
  return apply(coweight_matrix(w), v);
}

ExtAffineElt RootDatum::translation(const IVec& mu) const {
  if (mu.size() != dim()) throw DimensionMismatch("translation has wrong dimension");
  return ExtAffineElt{mu, identity()};
}

ExtAffineElt RootDatum::mul(const ExtAffineElt& a, const ExtAffineElt& b) const {
  IVec t = act_weight(a.finite, b.translation);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += a.translation[i];
  return ExtAffineElt{std::move(t), mul(a.finite, b.finite)};
}

ExtAffineElt RootDatum::inverse(const ExtAffineElt& g) const {
  WeylElt wi = inverse(g.finite);
  IVec t = act_weight(wi, g.translation);
  for (long& x : t) x = -x;
  return ExtAffineElt{std::move(t), wi};
}

QVec RootDatum::ext_affine_act(const ExtAffineElt& g, const QVec& v) const {
  if (v.size() != nvars()) throw DimensionMismatch("vector in t_aff has wrong dimension");
  QVec xi(v.begin(), v.end() - 1);
  QVec out = act_coweight(g.finite, xi);
  Rational h = v.back() + dot(out, std::span<const long>(g.translation));
  out.push_back(h);
  return out;
}

IVec RootDatum::ext_affine_act(const ExtAffineElt& g, const IVec& v) const {
  if (v.size() != nvars()) throw DimensionMismatch("vector in t_aff has wrong dimension");
  IVec xi(v.begin(), v.end() - 1);
  IVec out = act_coweight(g.finite, xi);
  long h = v.back() + dot(std::span<const long>(out), std::span<const long>(g.translation));
  out.push_back(h);
  return out;
}

QVec RootDatum::ext_affine_act_dual(const ExtAffineElt& g, const QVec& lambda) const {
  QVec out = act_weight(g.finite, lambda);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += Rational(g.translation[i]);
  return out;
}

std::vector<MultiPoly> RootDatum::substitution(const ExtAffineElt& g) const {
  std::size_t n = nvars();
  std::vector<MultiPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    images.push_back(MultiPoly::linear(std::span<const long>(ext_affine_act(g, e))));
  }
  return images;
}

void RootDatum::build_affine() {
  for (std::size_t i = 0; i < rank(); ++i) {
    AffineSimpleRoot a;
    a.finite_part = simple_root(i);
    a.coroot = simple_coroot(i);
    a.reflection = finite(simple_reflection(i));
    a.factor = factor_of_[i];
    a.label = "a" + std::to_string(i + 1);
    affine_.push_back(std::move(a));
  }
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    AffineSimpleRoot a;
    a.finite_part = highest_[f];
    for (long& x : a.finite_part) x = -x;
    a.delta = 1;
    a.coroot = highest_coroot_[f];
    for (long& x : a.coroot) x = -x;
    a.coroot_hbar = 1;
    std::size_t k = std::find(pos_roots_.begin(), pos_roots_.end(), highest_[f]) - pos_roots_.begin();
    a.reflection = ExtAffineElt{a.finite_part, root_reflection(k)};
    a.factor = f;
    a.label = factors_.size() == 1 ? "a0" : "a0_" + std::to_string(f + 1);
    affine_.push_back(std::move(a));
  }
}

std::optional<int> RootDatum::braid_order(std::size_t i, std::size_t j) const {
  const auto& a = affine_.at(i);
  const auto& b = affine_.at(j);
  if (i == j) return 1;
  long aij = dot(std::span<const long>(b.finite_part), std::span<const long>(a.coroot));
  long aji = dot(std::span<const long>(a.finite_part), std::span<const long>(b.coroot));
  return braid_order_from_product(aij * aji);
}

bool RootDatum::is_coroot(const IVec& coroot) const {
  if (coroot.size() != dim()) return false;
  if (std::find(pos_coroots_.begin(), pos_coroots_.end(), coroot) != pos_coroots_.end()) return true;
  IVec neg = coroot;
  for (long& x : neg) x = -x;
  return std::find(pos_coroots_.begin(), pos_coroots_.end(), neg) != pos_coroots_.end();
}

Scaled<OreFactor> RootDatum::make_ore_factor(const IVec& coroot, long shift) const {
  if (coroot.size() != dim()) throw DimensionMismatch("coroot has wrong dimension");
  auto s = normalize_factor(coroot, shift);
  if (!is_coroot(s.factor.coroot))
    throw NotOreFactor(to_string(std::span<const long>(coroot)) + " is not a multiple of a coroot of " + label_);
  return s;
}

}  // namespace toda
