#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "toda/errors.hpp"
#include "toda/filtration_kit.hpp"
#include "toda/kostant_slice.hpp"
#include "toda/nil_daha.hpp"
#include "toda/root_data.hpp"
#include "toda/toda_modules.hpp"
#include "toda/torus_diffops.hpp"

namespace toda::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;

struct Options {
  std::string type = "A1";
  unsigned degree = 0;
  std::vector<std::string> nu;
  std::string out;
  std::string format = "json";
  std::string group = "SL2";
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  long mu_bound = 1;
  std::string input;
  std::string range;
  bool inverse = false;
};

// What a subcommand hands back: the JSON result, a CSV rendering and whether
// every check passed.
struct Outcome {
  json result;
  std::string csv;
  bool pass = true;
};

json q(const Rational& r) { return r.str(); }

json qvec(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(q(x));
  return a;
}

json matrix(const QMatrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(qvec(row));
  return a;
}

std::string csv_vec(const QVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i].str();
  return s;
}

std::vector<QVec> parse_nus(const Options& o) {
  std::vector<QVec> out;
  for (const auto& s : o.nu) out.push_back(parse_qvec(s));
  return out;
}

Outcome run_verify_presentation(const Options& o) {
  auto d = RootDatum::build(o.type);
  auto rep = verify_presentation(d, o.degree);
  Outcome out;
  json rel = json::array();
  std::ostringstream csv;
  csv << "relation,kind,element_ok,action_ok,monomials_checked\n";
  for (const auto& r : rep.relations) {
    json j{{"name", r.name},
           {"kind", r.kind},
           {"element_ok", r.element_ok},
           {"action_ok", r.action_ok},
           {"monomials_checked", r.monomials_checked},
           {"status", r.passed() ? "pass" : "fail"}};
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    rel.push_back(std::move(j));
    csv << r.name << "," << r.kind << "," << r.element_ok << "," << r.action_ok << "," << r.monomials_checked << "\n";
  }
  out.result = {{"type", rep.type},
                {"degree", rep.degree},
                {"relations", rel},
                {"skipped", rep.skipped},
                {"all_pass", rep.all_pass()}};
  out.csv = csv.str();
  out.pass = rep.all_pass();
  return out;
}

Outcome run_classify(const Options& o) {
  auto d = RootDatum::build(o.type);
  std::vector<InfChar> chars;
  for (const auto& nu : parse_nus(o)) chars.push_back(classify_parameter(d, nu));
  // Block labels: index of the first parameter in the same block.
  std::vector<std::size_t> block(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    block[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (same_block(chars[j], chars[i])) {
        block[i] = block[j];
        break;
      }
  }
  Outcome out;
  json arr = json::array();
  std::ostringstream csv;
  csv << "nu,non_integral,regular,block_id,orbit_size,block\n";
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto& c = chars[i];
    arr.push_back({{"nu", qvec(c.nu_dot)},
                   {"non_integral", c.non_integral},
                   {"regular", c.regular},
                   {"block_id", qvec(c.block_id)},
                   {"orbit_size", c.orbit.size()},
                   {"block", block[i]}});
    csv << csv_vec(c.nu_dot) << "," << c.non_integral << "," << c.regular << "," << csv_vec(c.block_id) << ","
        << c.orbit.size() << "," << block[i] << "\n";
  }
  out.result = {{"type", d->label()}, {"parameters", arr}};
  out.csv = csv.str();
  return out;
}

Outcome run_hc_module(const Options& o) {
  auto d = RootDatum::build(o.type);
  auto nus = parse_nus(o);
  if (nus.size() != 1) throw ParseError("hc-module takes exactly one --nu");
  auto c = classify_parameter(d, nus[0]);
  auto m = hc_weight_module(c);
  auto inv = fundamental_invariants(*d);
  auto check = check_weight_model(m, o.mu_bound, inv.polys);
  QVec at = c.nu_dot;
  at.push_back(Rational(1));
  json central = json::array();
  for (std::size_t k = 0; k < inv.polys.size(); ++k)
    central.push_back({{"invariant", inv.polys[k].str(d->variable_names())}, {"value", q(inv.polys[k].evaluate(at))}});
  json fams = json::array();
  std::ostringstream csv;
  csv << "family,base\n";
  for (std::size_t i = 0; i < m.families(); ++i) {
    fams.push_back({{"index", i}, {"base", qvec(m.family_base(i))}});
    csv << i << "," << csv_vec(m.family_base(i)) << "\n";
  }
  Outcome out;
  out.result = {{"type", d->label()},
                {"nu", qvec(c.nu_dot)},
                {"regular", c.regular},
                {"families", fams},
                {"central_character", central},
                {"lines_checked", check.lines_checked},
                {"relation_failures", check.relation_failures},
                {"central_failures", check.central_failures},
                {"counterexamples", check.counterexamples}};
  out.csv = csv.str();
  out.pass = check.ok();
  return out;
}

Outcome run_simplicity(const Options& o) {
  auto d = RootDatum::build(o.type);
  Outcome out;
  json arr = json::array();
  std::ostringstream csv;
  csv << "nu,regular,certified,consistent\n";
  for (const auto& nu : parse_nus(o)) {
    auto c = classify_parameter(d, nu);
    auto cert = simplicity_certificate(c);
    json j{{"nu", qvec(nu)},
           {"regular", cert.regular_flag},
           {"certified", cert.certified},
           {"consistent", cert.consistent()}};
    if (cert.witness) j["witness"] = qvec(*cert.witness);
    if (cert.witness_families) j["witness_families"] = {cert.witness_families->first, cert.witness_families->second};
    arr.push_back(std::move(j));
    csv << csv_vec(nu) << "," << cert.regular_flag << "," << cert.certified << "," << cert.consistent() << "\n";
    out.pass = out.pass && cert.consistent();
  }
  out.result = {{"type", d->label()}, {"parameters", arr}};
  out.csv = csv.str();
  return out;
}

Outcome run_koszul(const Options& o) {
  auto d = RootDatum::build(o.type);
  Outcome out;
  json arr = json::array();
  std::ostringstream csv;
  csv << "nu,filtration_degree,homological_degree,dim\n";
  for (const auto& nu : parse_nus(o)) {
    auto rep = koszul_check(classify_parameter(d, nu), o.degree);
    json j{{"nu", qvec(nu)},
           {"degrees", rep.degrees},
           {"d_squared_zero", rep.d_squared_zero},
           {"exact", rep.exact},
           {"ext_concentrated", rep.ext_concentrated},
           {"homology", rep.homology},
           {"ext_dims", rep.ext_dims}};
    if (rep.failing_degree) j["failing_degree"] = *rep.failing_degree;
    arr.push_back(std::move(j));
    for (std::size_t D = 0; D < rep.homology.size(); ++D)
      for (std::size_t k = 0; k < rep.homology[D].size(); ++k)
        csv << csv_vec(nu) << "," << D << "," << k << "," << rep.homology[D][k] << "\n";
    out.pass = out.pass && rep.d_squared_zero && rep.exact && rep.ext_concentrated;
  }
  out.result = {{"type", d->label()}, {"max_degree", o.degree}, {"parameters", arr}};
  out.csv = csv.str();
  return out;
}

Outcome run_kostant(const Options& o) {
  GroupSpec g = parse_group(o.group);
  if (o.nu.size() > 1) throw ParseError("kostant takes at most one --nu");
  QVec nu = o.nu.empty() ? QVec(g.special ? g.n - 1 : g.n) : parse_qvec(o.nu[0]);
  auto rep = fiber_vs_big_cell(nu, g);
  Outcome out;
  json wit = json::array();
  std::ostringstream csv;
  csv << "component,root_order,root_exponent,in_big_cell,commutes,in_group\n";
  for (const auto& w : rep.witnesses) {
    json j{{"component", w.component},
           {"center_scalar", {{"order", w.root_order}, {"exponent", w.root_exponent}}},
           {"u", matrix(w.u)}};
    if (w.element) j["element"] = matrix(*w.element);
    j["in_big_cell"] = w.in_big_cell;
    j["commutes"] = w.commutes;
    j["in_group"] = w.in_group;
    wit.push_back(std::move(j));
    csv << w.component << "," << w.root_order << "," << w.root_exponent << "," << w.in_big_cell << "," << w.commutes
        << "," << w.in_group << "\n";
    out.pass = out.pass && w.in_big_cell && w.commutes && w.in_group;
  }
  out.result = {{"group", g.str()},
                {"nu", qvec(nu)},
                {"slice_point", matrix(rep.point.matrix)},
                {"root_multiplicities", rep.root_multiplicities},
                {"components", rep.components},
                {"witnesses", wit},
                {"all_meet_big_cell", rep.all_meet_big_cell}};
  out.pass = out.pass && rep.all_meet_big_cell;
  if (g.n >= 2 && o.samples > 0) {
    auto batch = big_cell_samples(g.n, o.samples, o.seed);
    json fails = json::array();
    for (const auto& f : batch.failures) fails.push_back({{"h", qvec(f.h)}, {"t", qvec(f.t)}});
    out.result["big_cell_samples"] = {
        {"n", batch.n}, {"samples", batch.samples}, {"passed", batch.passed}, {"failures", fails}};
    out.pass = out.pass && batch.passed == batch.samples;
  }
  out.csv = csv.str();
  return out;
}

GradedFilteredWindow read_window(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open window file '" + path + "'");
  std::map<int, std::map<int, long>> cells;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "degree,level,dim") continue;
    }
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw ParseError("bad window row '" + line + "'");
    try {
      cells[std::stoi(a)][std::stoi(b)] = std::stol(c);
    } catch (const std::exception&) {
      throw ParseError("bad window row '" + line + "'");
    }
  }
  GradedFilteredWindow w;
  for (const auto& [deg, levels] : cells) {
    FilteredColumn col;
    col.lo = levels.begin()->first;
    int expect = col.lo;
    for (const auto& [lvl, dim] : levels) {
      if (lvl != expect) throw ParseError("levels of degree " + std::to_string(deg) + " are not contiguous");
      col.dims.push_back(dim);
      ++expect;
    }
    w.columns.emplace(deg, std::move(col));
  }
  return w;
}

Outcome run_regrade(const Options& o) {
  if (o.input.empty()) throw ParseError("regrade needs --in");
  auto win = read_window(o.input);
  std::optional<std::pair<int, int>> range;
  if (!o.range.empty()) {
    auto comma = o.range.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("range");
      range = std::make_pair(std::stoi(o.range.substr(0, comma)), std::stoi(o.range.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError("--range expects 'lo,hi'");
    }
  }
  if (o.inverse && range) throw ParseError("--range applies to the forward regrading only");
  auto res = o.inverse ? kazhdan_unregrade(win) : kazhdan_regrade(win, range);
  json cols = json::array();
  for (const auto& [d, c] : res.columns) cols.push_back({{"degree", d}, {"lo", c.lo}, {"dims", c.dims}});
  Outcome out;
  out.result = {{"direction", o.inverse ? "inverse" : "forward"}, {"columns", cols}, {"monotone", res.monotone()}};
  auto low = lowest_nonzero_level(res);
  out.result["lowest_nonzero_level"] = low ? json(*low) : json(nullptr);
  out.csv = window_csv(res);
  out.pass = res.monotone();
  return out;
}

Outcome run_sandwich(const Options& o) {
  auto d = RootDatum::build(o.type);
  auto rep = sandwich_check(d, o.samples, o.seed);
  Outcome out;
  out.result = {{"type", rep.type},
                {"generator_pairs", rep.generator_pairs},
                {"generator_pairs_ok", rep.generator_pairs_ok},
                {"samples", rep.samples},
                {"samples_ok", rep.samples_ok},
                {"counterexamples", rep.counterexamples},
                {"all_pass", rep.all_pass()}};
  std::ostringstream csv;
  csv << "type,generator_pairs,generator_pairs_ok,samples,samples_ok\n"
      << rep.type << "," << rep.generator_pairs << "," << rep.generator_pairs_ok << "," << rep.samples << ","
      << rep.samples_ok << "\n";
  out.csv = csv.str();
  out.pass = rep.all_pass();
  return out;
}

json config_json(const std::string& command, const Options& o) {
  json c{{"command", command}};
  if (command == "kostant") {
    c["group"] = o.group;
    c["samples"] = o.samples;
    c["seed"] = o.seed;
  } else if (command == "regrade") {
    c["in"] = o.input;
    c["inverse"] = o.inverse;
    if (!o.range.empty()) c["range"] = o.range;
  } else {
    c["type"] = o.type;
  }
  if (command == "verify-presentation" || command == "koszul") c["degree"] = o.degree;
  if (command == "hc-module") c["mu_bound"] = o.mu_bound;
  if (command == "sandwich-check") {
    c["samples"] = o.samples;
    c["seed"] = o.seed;
  }
  if (!o.nu.empty()) c["nu"] = o.nu;
  c["format"] = o.format;
  return c;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for the quantum Toda lattice and its nil-DAHA model", "toda"};
  app.require_subcommand(1);
  Options o;
  auto add_type = [&](CLI::App* s) { s->add_option("--type", o.type, "Root datum, e.g. A2 or B2xT1")->required(); };
  auto add_nu = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--nu", o.nu, "Rational vector 'a,b,...' (repeatable)")->allow_extra_args(false);
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Output file (default stdout)");
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* vp = app.add_subcommand("verify-presentation", "Check the nil-DAHA defining relations");
  add_type(vp);
  vp->add_option("--degree", o.degree, "Check on monomials up to this degree")->required();
  auto* cl = app.add_subcommand("classify", "Classify parameters: non-integral, regular, block");
  add_type(cl);
  add_nu(cl, true);
  auto* hc = app.add_subcommand("hc-module", "Weight model of the Harish-Chandra module at one parameter");
  add_type(hc);
  add_nu(hc, true);
  hc->add_option("--mu-bound", o.mu_bound, "Check lines with |mu_i| <= bound")->check(CLI::Range(0L, 4L));
  auto* si = app.add_subcommand("simplicity", "Simplicity certificates for non-integral parameters");
  add_type(si);
  add_nu(si, true);
  auto* ko = app.add_subcommand("koszul", "Koszul complex exactness at parameters");
  add_type(ko);
  add_nu(ko, true);
  o.degree = 0;
  ko->add_option("--degree", o.degree, "Filtration degree bound")->required();
  auto* ks = app.add_subcommand("kostant", "Kostant slice fiber components and the big cell");
  ks->add_option("--group", o.group, "SL2..SL4 or GL1..GL4");
  add_nu(ks, false);
  ks->add_option("--samples", o.samples, "Random big-cell parametrization samples");
  ks->add_option("--seed", o.seed, "Random seed");
  auto* rg = app.add_subcommand("regrade", "Kazhdan regrading of a filtration window");
  rg->add_option("--in", o.input, "CSV file with rows degree,level,dim")->required();
  rg->add_option("--range", o.range, "Explicit level range 'lo,hi'");
  rg->add_flag("--inverse", o.inverse, "Recover the original filtration");
  auto* sw = app.add_subcommand("sandwich-check", "Embedding and spherical product consistency");
  add_type(sw);
  sw->add_option("--samples", o.samples, "Random W-invariant pairs")->default_val(50);
  sw->add_option("--seed", o.seed, "Random seed");
  for (auto* s : {vp, cl, hc, si, ko, ks, rg, sw}) add_common(s);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome res;
  try {
    if (command == "verify-presentation") res = run_verify_presentation(o);
    else if (command == "classify") res = run_classify(o);
    else if (command == "hc-module") res = run_hc_module(o);
    else if (command == "simplicity") res = run_simplicity(o);
    else if (command == "koszul") res = run_koszul(o);
    else if (command == "kostant") res = run_kostant(o);
    else if (command == "regrade") res = run_regrade(o);
    else res = run_sandwich(o);
  } catch (const toda::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  std::string payload;
  if (o.format == "csv") {
    payload = res.csv;
  } else {
    json doc{{"schema", kSchema}, {"command", command}, {"config", config_json(command, o)}, {"result", res.result}};
    payload = doc.dump(2) + "\n";
  }
  if (o.out.empty()) {
    out << payload;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << o.out << "'\n";
      return 2;
    }
    f << payload;
  }
  if (!res.pass) err << "verification failed; see the report\n";
  return res.pass ? 0 : 1;
}

}  // namespace toda::cli
