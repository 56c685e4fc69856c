// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "toda/filtration_kit.hpp"
#include "toda/kostant_slice.hpp"
#include "toda/nil_daha.hpp"
#include "toda/toda_modules.hpp"
#include "toda/torus_diffops.hpp"

using namespace toda;

namespace {

const std::vector<std::string> kTypes{"A1", "A2", "B2", "G2"};

MultiPoly random_poly(const DatumPtr& d, oracle::Rng& rng, unsigned max_deg) {
  auto monos = monomials_up_to(d->nvars(), max_deg);
  MultiPoly p(d->nvars());
  for (long k = rng.integer(1, 3); k > 0; --k)
    p += monos[static_cast<std::size_t>(rng.integer(0, static_cast<long>(monos.size()) - 1))] *
         Rational(rng.integer(-3, 3));
  return p;
}

Generator random_generator(const DatumPtr& d, oracle::Rng& rng) {
  switch (rng.integer(0, 3)) {
    case 0: return gen::Poly{MultiPoly::variable(d->nvars(), static_cast<std::size_t>(rng.integer(0, static_cast<long>(d->nvars()) - 1)))};
    case 1: return gen::Theta{static_cast<std::size_t>(rng.integer(0, static_cast<long>(d->affine_simple_roots().size()) - 1))};
    case 2: {
      IVec mu(d->dim(), 0);
      mu[static_cast<std::size_t>(rng.integer(0, static_cast<long>(d->dim()) - 1))] = rng.integer(0, 1) ? 1 : -1;
      return gen::Translate{mu};
    }
    default: return gen::Weyl{d->simple_reflection(static_cast<std::size_t>(rng.integer(0, static_cast<long>(d->rank()) - 1)))};
  }
}

QVec random_nu(const DatumPtr& d, oracle::Rng& rng, long num, long den) {
  QVec nu(d->dim());
  for (auto& v : nu) v = rng.rational(num, den);
  return nu;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome presentation() {
  auto start = std::chrono::steady_clock::now();
  std::size_t relations = 0;
  for (const auto& t : kTypes) {
    auto rep = verify_presentation(RootDatum::build(t), 4);
    relations += rep.relations.size();
    if (!rep.all_pass()) return {false, t + " has a failing relation"};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu relations at degree <= 4 in %.1fs", relations, secs);
  return {secs < 60.0, buf};
}

Outcome module_compatibility() {
  oracle::Rng rng(2024);
  for (const auto& t : kTypes) {
    auto d = RootDatum::build(t);
    for (int trial = 0; trial < 100; ++trial) {
      GeneratorWord x, y;
      for (long k = rng.integer(1, 3); k > 0; --k) x.push_back(random_generator(d, rng));
      for (long k = rng.integer(1, 3); k > 0; --k) y.push_back(random_generator(d, rng));
      GeneratorWord xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      MultiPoly f = random_poly(d, rng, 3);
      if (daha_act_poly(word_element(d, xy), f) != word_act_poly(d, x, word_act_poly(d, y, f)))
        return {false, t + " word pair " + std::to_string(trial)};
    }
  }
  return {true, "100 word pairs per type"};
}

Outcome sandwich() {
  std::size_t pairs = 0;
  for (const auto& t : kTypes) {
    auto rep = sandwich_check(RootDatum::build(t), 50, 11);
    pairs += rep.generator_pairs;
    if (!rep.all_pass() || rep.samples_ok != 50) return {false, t + ": " + std::to_string(rep.samples_ok) + "/50 samples"};
  }
  return {true, std::to_string(pairs) + " generator pairs, 50 invariant samples per type"};
}

Outcome classification() {
  oracle::Rng rng(4242);
  std::size_t regular = 0;
  for (const auto& t : {"A1", "A2", "B2", "C2", "G2", "A3"}) {
    auto d = RootDatum::build(t);
    for (int trial = 0; trial < 200; ++trial) {
      auto c = classify_parameter(d, random_nu(d, rng, 12, 6));
      if (c.regular && !c.non_integral) return {false, std::string(t) + " regular but integral"};
      regular += c.regular;
    }
  }
  auto a1 = RootDatum::build("A1");
  auto half = classify_parameter(a1, QVec{Rational(1, 2)});
  if (!half.non_integral || half.regular) return {false, "A1 1/2 misclassified"};
  return {true, std::to_string(regular) + " regular of 1200, no exceptions; A1 1/2 non-integral, non-regular"};
}

Outcome simplicity() {
  oracle::Rng rng(99);
  std::size_t tested = 0, lines = 0;
  for (const auto& t : kTypes) {
    auto d = RootDatum::build(t);
    auto inv = fundamental_invariants(*d);
    int done = 0;
    while (done < 50) {
      auto ch = classify_parameter(d, random_nu(d, rng, 6, 6));
      if (!ch.non_integral) continue;
      ++done;
      auto cert = simplicity_certificate(ch);
      if (cert.certified != ch.regular || !cert.consistent()) return {false, t + " certificate disagrees with regularity"};
      auto wm = check_weight_model(hc_weight_module(ch), 1, inv.polys);
      if (!wm.ok()) return {false, t + " weight model relation fails"};
      lines += wm.lines_checked;
    }
    tested += 50;
  }
  return {true, std::to_string(tested) + " non-integral parameters, " + std::to_string(lines) + " lines"};
}

Outcome regrading() {
  oracle::Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    GradedFilteredWindow w;
    for (long k = rng.integer(1, 4); k > 0; --k) {
      FilteredColumn c;
      c.lo = static_cast<int>(rng.integer(-3, 3));
      long cur = rng.integer(0, 2);
      for (long j = rng.integer(1, 5); j > 0; --j) c.dims.push_back(cur += rng.integer(0, 3));
      w.columns[static_cast<int>(rng.integer(-5, 5))] = c;
    }
    if (!(kazhdan_unregrade(kazhdan_regrade(w)) == w)) return {false, "round trip " + std::to_string(trial)};
  }
  long deg = kazhdan_degree_bi_invariant(*RootDatum::build("A1"), {1});
  return {deg == -2, "50 round trips; A1 degree of e^varpi = " + std::to_string(deg)};
}

Outcome koszul() {
  oracle::Rng rng(7);
  for (const auto& t : {"A1", "A2"}) {
    auto d = RootDatum::build(t);
    for (int k = 0; k < 3; ++k) {
      auto rep = koszul_check(classify_parameter(d, random_nu(d, rng, 9, 7)), 6);
      if (!rep.d_squared_zero || !rep.exact || !rep.ext_concentrated)
        return {false, std::string(t) + " at parameter " + std::to_string(k)};
    }
  }
  return {true, "A1, A2 at three parameters each, degree <= 6"};
}

Outcome kostant() {
  auto start = std::chrono::steady_clock::now();
  auto f = fiber_vs_big_cell(QVec{Rational(0)}, parse_group("SL2"));
  if (f.components != 2 || f.witnesses.size() != 2) return {false, "SL2 fiber has " + std::to_string(f.components) + " components"};
  for (const auto& w : f.witnesses)
    if (!w.in_big_cell || !w.commutes || !w.in_group) return {false, "SL2 witness fails"};
  for (std::size_t n : {2u, 3u}) {
    auto b = big_cell_samples(n, 100, 13);
    if (b.passed != 100) return {false, "sl" + std::to_string(n) + ": " + std::to_string(b.passed) + "/100"};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "2 components with witnesses; 200 big-cell pairs in %.2fs", secs);
  return {secs < 10.0, buf};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"presentation relations", presentation},
      {"standard module compatibility", module_compatibility},
      {"sandwich consistency", sandwich},
      {"parameter classification", classification},
      {"simplicity certificates", simplicity},
      {"Kazhdan regrading", regrading},
      {"Koszul resolution", koszul},
      {"Kostant geometry", kostant},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
