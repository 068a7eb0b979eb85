// so3lattice: command line front end.
//
// Every subcommand fills a Report (config echo, an optional table, summary
// values, a verdict) that is rendered as text, json or csv.  Output depends
// only on the command line and the SO3_* environment variables.
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "so3/fkb.hpp"
#include "so3/invariants.hpp"
#include "so3/io.hpp"
#include "so3/lattice.hpp"

using namespace so3;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int p = 5;
  int genus = 0;
  std::string points;
  std::string tree;
  unsigned seed = 20240607;
  int width_cap = 14;
  std::string format = "text";
  std::string method = "surgery";
};

struct Report {
  std::string command;
  json config = json::object();
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;
  json summary = json::object();
  bool pass = true;
};

std::string cell_text(const json& v) {
  if (v.is_object() && v.contains("basis")) return cyclo_from_json(v).to_string();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void render(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json j;
    j["schema_version"] = kJsonSchemaVersion;
    j["command"] = r.command;
    j["config"] = r.config;
    j["columns"] = r.cols;
    j["rows"] = json::array();
    for (const auto& row : r.rows) {
      json o = json::object();
      for (size_t i = 0; i < r.cols.size(); ++i) o[r.cols[i]] = row[i];
      j["rows"].push_back(o);
    }
    j["summary"] = r.summary;
    j["pass"] = r.pass;
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    if (!r.cols.empty()) {
      for (size_t i = 0; i < r.cols.size(); ++i) out << (i ? "," : "") << csv_quote(r.cols[i]);
      out << "\n";
      for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_quote(cell_text(row[i]));
        out << "\n";
      }
    } else {
      out << "key,value\n";
      for (const auto& [k, v] : r.summary.items()) out << csv_quote(k) << "," << csv_quote(cell_text(v)) << "\n";
      out << "pass," << (r.pass ? "true" : "false") << "\n";
    }
    return;
  }
  out << "# so3lattice " << r.command << "\n";
  for (const auto& [k, v] : r.config.items()) out << "# " << k << " = " << cell_text(v) << "\n";
  if (!r.cols.empty()) {
    std::vector<size_t> w(r.cols.size());
    std::vector<std::vector<std::string>> txt;
    for (size_t i = 0; i < r.cols.size(); ++i) w[i] = r.cols[i].size();
    for (const auto& row : r.rows) {
      txt.emplace_back();
      for (size_t i = 0; i < row.size(); ++i) {
        txt.back().push_back(cell_text(row[i]));
        w[i] = std::max(w[i], txt.back().back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(w[i] - cells[i].size() + 2, ' ');
      }
      out << s << "\n";
    };
    line(r.cols);
    for (const auto& t : txt) line(t);
  }
  for (const auto& [k, v] : r.summary.items()) out << k << ": " << cell_text(v) << "\n";
  out << "result: " << (r.pass ? "pass" : "fail") << "\n";
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> v;
  std::istringstream in(s);
  for (std::string x; std::getline(in, x, ',');) {
    if (x.empty()) continue;
    try {
      size_t used = 0;
      v.push_back(std::stoi(x, &used));
      if (used != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw UsageError("bad integer in list: '" + x + "'");
    }
  }
  return v;
}

const PrimeContext& context(const Config& cfg) {
  try {
    return make_context(cfg.p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

LollipopTree tree_of(const Config& cfg) {
  if (!cfg.tree.empty()) return read_tree(cfg.tree);
  if (cfg.genus < 0) throw UsageError("genus must be >= 0");
  auto pts = parse_list(cfg.points);
  for (int c : pts)
    if (c < 0 || c > cfg.p - 2) throw UsageError("point colors must lie in [0, p-2]");
  return canonical_tree(cfg.genus, pts);
}

GramMethod method_of(const Config& cfg) {
  if (cfg.method == "surgery") return GramMethod::Surgery;
  if (cfg.method == "glued") return GramMethod::Glued;
  if (cfg.method == "closed") return GramMethod::Closed;
  throw UsageError("unknown gram method " + cfg.method);
}

json surface_json(const Config& cfg) {
  json j;
  j["p"] = cfg.p;
  if (!cfg.tree.empty()) {
    j["tree"] = cfg.tree;
  } else {
    j["genus"] = cfg.genus;
    j["points"] = cfg.points;
  }
  return j;
}

json opt_json(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }
json val_json(long v) { return v == kInfiniteValuation ? json("inf") : json(v); }

json ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---- named assertions ----

struct CheckOutcome {
  bool pass = true;
  std::string detail;
};

struct NamedCheck {
  std::string name;
  std::string alias;
  std::function<CheckOutcome(const Config&)> run;
};

CheckOutcome check_dims(const Config& cfg) {
  const auto& c = context(cfg);
  auto t = tree_of(cfg);
  long long listed = (long long)enumerate_small_colorings(t, c.p).size();
  long long counted = fiber_sums(t, c.p).count;
  CheckOutcome o{listed == counted, "dim " + std::to_string(listed)};
  if (cfg.tree.empty() && cfg.points.empty() && cfg.genus == 2) {
    const long long d = c.d;
    o.pass = o.pass && listed == d * (d + 1) * (2 * d + 1) / 6;
  }
  if (cfg.tree.empty() && cfg.points.empty() && cfg.genus == 1) o.pass = o.pass && listed == c.d;
  return o;
}

CheckOutcome check_index(const Config& cfg) {
  auto r = index_identity(tree_of(cfg), context(cfg).p);
  return {r.holds, "N=" + std::to_string(r.N) + " N#=" + std::to_string(r.Nsharp) + " g(d-1)dim=" + std::to_string(r.rhs)};
}

CheckOutcome check_duality(const Config& cfg) {
  auto L = lattice_data(tree_of(cfg), context(cfg), method_of(cfg));
  auto r = duality_check(L);
  return {r.ok(), "dim " + std::to_string(L.basis.size()) + " det valuation " + std::to_string(r.det_valuation) + "/" +
                      std::to_string(r.expected_valuation) + (r.dual_unit ? " unit dual" : " non-unit dual")};
}

CheckOutcome check_torsion(const Config& cfg) {
  auto r = torsion_report(lattice_data(tree_of(cfg), context(cfg), method_of(cfg)));
  bool ok = r.radical_dim == r.odd_count && r.form_symmetry;
  if (r.odd_count) ok = ok && r.odd_form_integral && r.odd_form_symmetry && r.odd_form_nondegenerate;
  return {ok, "radical " + std::to_string(r.radical_dim) + " odd " + std::to_string(r.odd_count)};
}

CheckOutcome check_lollipop(const Config& cfg) {
  auto r = lollipop_divisibility_suite(context(cfg), 100, cfg.seed);
  return {r.failures == 0 && r.split_failures == 0,
          std::to_string(r.samples.size()) + " samples, " + std::to_string(r.failures) + " failures, " +
              std::to_string(r.split_failures) + " split failures"};
}

CheckOutcome check_mapping_torus(const Config& cfg) {
  const auto& c = context(cfg);
  int bad = 0;
  for (int n = 0; n <= 2 * c.p; ++n) {
    if (mapping_torus_closed(n, c) != mapping_torus_trace(n, c)) {
      ++bad;
      continue;
    }
    auto r = make_result(mapping_torus_closed(n, c));
    if (n % c.p && (r.o_p != 2 * c.d - 2 || r.cut_bound != 2)) ++bad;
  }
  return {bad == 0, std::to_string(2 * c.p + 1) + " twists, " + std::to_string(bad) + " failures"};
}

CheckOutcome check_calibration(const Config& cfg) {
  const auto& c = context(cfg);
  auto unknot = [](int f) {
    PDLink L;
    L.comps.push_back({"U", Role::Surgery, f, 0, -1});
    return L;
  };
  bool ok = surgery_value(PDLink{}, c) == CycloElem::one(c) && surgery_value(unknot(1), c) == CycloElem::one(c) &&
            surgery_value(unknot(-1), c) == CycloElem::one(c) && surgery_value(unknot(0), c) == D_elem(c);
  return {ok, "empty, +1, -1 and 0 framed unknots"};
}

CheckOutcome check_fkb(const Config& cfg) {
  const auto& c = make_context(5);
  const char* dir = std::getenv("SO3_DATA_DIR");
  PDLink L = read_pd(std::string(dir ? dir : SO3_DATA_DIR) + "/L9a12.pd");
  auto expected = IdealLattice::from_generators({CycloElem::one(c) + CycloElem::zeta_p(c, 3) * 2L}, c, Ring::Oplus);
  int bad = 0;
  for (int k = 1; k <= 10; ++k) {
    auto r = fkb_ideal(KnotInSolidTorus::from_link(L, "J", "K", k), c, true);
    if (k % 5 == 0 ? !(r.ideal == expected) : !r.ideal.is_unit_ideal()) ++bad;
  }
  (void)cfg;
  return {bad == 0, "framings 1..10, " + std::to_string(bad) + " mismatches"};
}

const std::vector<NamedCheck>& named_checks() {
  static const std::vector<NamedCheck> all = {
      {"dims", "dims", check_dims},
      {"index-identity", "prop9.1", check_index},
      {"duality", "thm9.3", check_duality},
      {"torsion", "prop14.5", check_torsion},
      {"lollipop", "thm7.1", check_lollipop},
      {"mapping-torus", "thm15.1", check_mapping_torus},
      {"calibration", "calibration", check_calibration},
      {"fkb-family", "prop16.7", check_fkb},
  };
  return all;
}

// ---- subcommands ----

Report cmd_dims(const Config& cfg) {
  Report r;
  r.config = surface_json(cfg);
  auto t = tree_of(cfg);
  r.summary["dim"] = fiber_sums(t, context(cfg).p).count;
  return r;
}

Report cmd_colorings(const Config& cfg) {
  Report r;
  r.config = surface_json(cfg);
  const auto& c = context(cfg);
  auto cols = enumerate_small_colorings(tree_of(cfg), c.p);
  r.cols = {"index", "a", "b", "e", "edges", "odd", "oddity", "exp_b", "exp_bsharp"};
  for (size_t i = 0; i < cols.size(); ++i) {
    const auto& x = cols[i];
    r.rows.push_back({(int)i, ints(x.a), ints(x.b), x.e, ints(x.color), x.odd(), oddity(x, c.p), exponent_b(x), exponent_bsharp(x)});
  }
  r.summary["count"] = cols.size();
  return r;
}

Report cmd_bases(const Config& cfg) {
  Report r;
  r.config = surface_json(cfg);
  auto L = lattice_data(tree_of(cfg), context(cfg), method_of(cfg));
  r.cols = {"basis", "element", "graph", "coefficient"};
  for (auto [name, M] : {std::pair<const char*, const CMatrix*>{"B", &L.T}, {"B#", &L.Tsharp}})
    for (int x = 0; x < L.basis.size(); ++x)
      for (int y = 0; y < L.basis.size(); ++y)
        if (!(*M)[x][y].is_zero())
          r.rows.push_back({name, coloring_label(L.basis.cols[x]), coloring_label(L.basis.cols[y]), to_json((*M)[x][y])});
  r.summary["dim"] = L.basis.size();
  r.summary["triangular"] = is_triangular(L.basis, L.T) && is_triangular(L.basis, L.Tsharp);
  return r;
}

Report cmd_gram(const Config& cfg, const std::string& which, bool full) {
  Report r;
  r.config = surface_json(cfg);
  r.config["method"] = cfg.method;
  r.config["matrix"] = which;
  const auto& c = context(cfg);
  auto t = tree_of(cfg);
  std::vector<std::string> labels;
  CMatrix M;
  if (which == "graph") {
    auto G = gram_graph(make_basis(t, c), method_of(cfg), full);
    labels = G.labels;
    M = G.entries;
  } else if (which == "B" || which == "dual") {
    auto L = lattice_data(t, c, method_of(cfg));
    for (const auto& x : L.basis.cols) labels.push_back(coloring_label(x));
    M = which == "B" ? L.gramB : L.dual;
    r.summary["integral"] = all_in_O(M);
  } else {
    throw UsageError("--matrix must be graph, B or dual");
  }
  r.cols = {"row", "col", "value"};
  for (size_t x = 0; x < M.size(); ++x)
    for (size_t y = 0; y < M.size(); ++y)
      if (!M[x][y].is_zero()) r.rows.push_back({labels[x], labels[y], to_json(M[x][y])});
  r.summary["dim"] = M.size();
  return r;
}

Report cmd_check(const Config& cfg, const std::vector<std::string>& names) {
  Report r;
  r.config = surface_json(cfg);
  r.config["seed"] = cfg.seed;
  r.cols = {"assertion", "key", "verdict", "detail"};
  std::vector<const NamedCheck*> chosen;
  for (const auto& n : names) {
    const NamedCheck* hit = nullptr;
    for (const auto& c : named_checks())
      if (c.name == n || c.alias == n) hit = &c;
    if (!hit) throw UsageError("unknown assertion " + n);
    chosen.push_back(hit);
  }
  if (chosen.empty())
    for (const auto& c : named_checks()) chosen.push_back(&c);
  int failed = 0;
  for (const auto* c : chosen) {
    CheckOutcome o;
    try {
      o = c->run(cfg);
    } catch (const WidthExceeded&) {
      throw;
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    failed += !o.pass;
    r.rows.push_back({c->name, c->alias, o.pass ? "pass" : "fail", o.detail});
  }
  r.summary["failed"] = failed;
  r.pass = failed == 0;
  return r;
}

PDLink load_pd(const std::string& path, const std::string& cargo) {
  PDLink L = read_pd(path);
  auto colors = parse_list(cargo);
  size_t k = 0;
  for (auto& comp : L.comps)
    if (comp.role == Role::Cargo && k < colors.size()) comp.color = colors[k++];
  if (k < colors.size()) throw UsageError("more --cargo colors than cargo components");
  return L;
}

Report cmd_invariant(const Config& cfg, const std::string& pd, const std::string& cargo) {
  Report r;
  r.config["p"] = cfg.p;
  r.config["pd"] = pd;
  r.config["cargo"] = cargo;
  const auto& c = context(cfg);
  PDLink L = load_pd(pd, cargo);
  for (const auto& comp : L.comps)
    if (comp.role == Role::Cargo && (comp.color < 0 || comp.color > c.p - 2)) throw UsageError("cargo color out of range");
  auto lay = layout_link(L);
  auto [sp, sn] = signature_counts(surgery_matrix(L, lay));
  auto res = eval_surgery(L, c);
  r.summary["components"] = L.comps.size();
  r.summary["crossings"] = L.crossings.size();
  r.summary["sigma_plus"] = sp;
  r.summary["sigma_minus"] = sn;
  r.summary["value"] = to_json(res.value);
  r.summary["o_p"] = val_json(res.o_p);
  r.summary["cut_bound"] = opt_json(res.cut_bound);
  return r;
}

Report cmd_mapping_torus(const Config& cfg, int nmin, int nmax) {
  Report r;
  r.config["p"] = cfg.p;
  r.config["n_min"] = nmin;
  r.config["n_max"] = nmax;
  const auto& c = context(cfg);
  r.cols = {"n", "value", "o_p", "cut_bound", "paths_agree"};
  int bad = 0;
  for (int n = nmin; n <= nmax; ++n) {
    CycloElem closed = mapping_torus_closed(n, c), trace = mapping_torus_trace(n, c);
    auto res = make_result(closed);
    bool agree = closed == trace;
    bad += !agree;
    r.rows.push_back({n, to_json(res.value), val_json(res.o_p), opt_json(res.cut_bound), agree});
  }
  r.summary["disagreements"] = bad;
  r.pass = bad == 0;
  return r;
}

Report cmd_cutbound(const Config& cfg, const std::string& pd, std::optional<long> valuation) {
  Report r;
  r.config["p"] = cfg.p;
  const auto& c = context(cfg);
  long o_p;
  if (!pd.empty()) {
    r.config["pd"] = pd;
    o_p = eval_surgery(read_pd(pd), c).o_p;
  } else if (valuation) {
    if (*valuation < 0) throw UsageError("valuation must be >= 0");
    r.config["valuation"] = *valuation;
    o_p = *valuation;
  } else {
    throw UsageError("cutbound needs --pd or --valuation");
  }
  r.summary["o_p"] = val_json(o_p);
  r.summary["cut_bound"] = opt_json(cut_bound(o_p, c));
  return r;
}

Report cmd_lollipop(const Config& cfg, int samples) {
  Report r;
  r.config["p"] = cfg.p;
  r.config["seed"] = cfg.seed;
  r.config["samples"] = samples;
  if (samples < 1) throw UsageError("--samples must be positive");
  auto rep = lollipop_divisibility_suite(context(cfg), samples, cfg.seed);
  r.cols = {"index", "lollipops", "sum_a", "v_circles", "split", "valuation", "bound", "ok"};
  for (const auto& s : rep.samples)
    r.rows.push_back({s.index, s.lollipops, s.sum_a, s.v_circles, s.split_basic, val_json(s.valuation), s.bound, s.ok});
  r.summary["failures"] = rep.failures;
  r.summary["split_checked"] = rep.split_checked;
  r.summary["split_failures"] = rep.split_failures;
  r.summary["redrawn"] = rep.redrawn;
  r.pass = rep.failures == 0 && rep.split_failures == 0;
  return r;
}

Report cmd_fkb(const Config& cfg, const std::string& pd, const std::string& axis, const std::string& knot, std::optional<int> framing,
               bool plus, const std::vector<std::string>& against) {
  Report r;
  r.config["p"] = cfg.p;
  r.config["pd"] = pd;
  r.config["axis"] = axis;
  r.config["surgery"] = knot;
  r.config["framing"] = framing ? json(*framing) : json(nullptr);
  r.config["plus"] = plus;
  const auto& c = context(cfg);
  PDLink L = read_pd(pd);
  int f = 0;
  if (!knot.empty()) {
    int k = L.find(knot);
    if (k < 0) throw UsageError("no component named " + knot);
    f = framing ? *framing : L.comps[k].framing;
  }
  KnotInSolidTorus N;
  try {
    N = KnotInSolidTorus::from_link(L, axis, knot, f);
  } catch (const FkbError& e) {
    throw UsageError(e.what());
  }
  auto res = fkb_ideal(N, c, plus);
  r.cols = {"m", "generator", "twist", "ring_generator"};
  for (size_t m = 0; m < res.raw.size(); ++m) r.rows.push_back({(int)m, to_json(res.raw[m]), res.twist[m], to_json(res.gens[m])});
  json hnf = json::array();
  for (const auto& row : res.ideal.hnf()) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(v.get_str());
    hnf.push_back(jr);
  }
  r.summary["ring"] = ring_name(res.ideal.ring());
  r.summary["hnf"] = hnf;
  r.summary["index"] = res.ideal.is_zero() ? json("inf") : json(res.ideal.index().get_str());
  r.summary["unit_ideal"] = !res.ideal.is_zero() && res.ideal.is_unit_ideal();
  r.summary["obstructs_S3"] = embedding_obstruction(res.ideal, CycloElem::one(c));
  for (const auto& path : against) {
    auto v = surgery_value(read_pd(path), c);
    if (res.ideal.ring() == Ring::Oplus) {
      int t = plus_twist(v);
      if (t > 0) v = v * -CycloElem::imag_unit(c);
    }
    r.summary["obstructs " + path] = embedding_obstruction(res.ideal, v);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral SO(3) lattices, quantum invariants and obstruction ideals"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* s, bool surface) {
    s->add_option("--p", cfg.p, "odd prime >= 5")->envname("SO3_P")->capture_default_str();
    s->add_option("--width-cap", cfg.width_cap, "bracket engine width cap")->envname("SO3_WIDTH_CAP")->capture_default_str();
    s->add_option("--format", cfg.format, "text, json or csv")
        ->envname("SO3_FORMAT")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    if (surface) {
      s->add_option("--genus", cfg.genus, "genus of the surface")->capture_default_str();
      s->add_option("--points", cfg.points, "comma separated colors of the marked points");
      s->add_option("--tree", cfg.tree, "lollipop tree file (overrides --genus/--points)");
      s->add_option("--method", cfg.method, "surgery, glued or closed")->capture_default_str();
    }
  };
  auto seeded = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "random seed")->envname("SO3_SEED")->capture_default_str(); };

  auto* dims = app.add_subcommand("dims", "dimension of the space of the surface");
  common(dims, true);
  auto* colorings = app.add_subcommand("colorings", "small colorings and their exponents");
  common(colorings, true);
  auto* bases = app.add_subcommand("bases", "B and B# in the graph basis");
  common(bases, true);
  auto* gram = app.add_subcommand("gram", "Gram matrices");
  common(gram, true);
  std::string which = "graph";
  bool full = false;
  gram->add_option("--matrix", which, "graph, B or dual")->capture_default_str();
  gram->add_flag("--full", full, "evaluate off-diagonal graph entries too");

  auto* check = app.add_subcommand("check", "named assertions");
  common(check, true);
  seeded(check);
  bool paper = false;
  std::vector<std::string> names;
  check->add_flag("--paper", paper, "run the named assertions")->required();
  check->add_option("names", names, "assertions to run (default: all)");

  auto* invariant = app.add_subcommand("invariant", "surgery invariant of a PD link");
  common(invariant, false);
  std::string pd, cargo;
  invariant->add_option("--pd", pd, "PD file")->required()->check(CLI::ExistingFile);
  invariant->add_option("--cargo", cargo, "colors of the cargo components, in file order");

  auto* mtorus = app.add_subcommand("mapping-torus", "mapping tori of powers of a separating twist in genus 2");
  common(mtorus, false);
  int nmin = 0, nmax = -1;
  mtorus->add_option("--n-min", nmin)->capture_default_str();
  mtorus->add_option("--n-max", nmax, "default 2p");

  auto* cutb = app.add_subcommand("cutbound", "lower bound for the cut number");
  common(cutb, false);
  std::string cut_pd;
  std::optional<long> valuation;
  cutb->add_option("--pd", cut_pd, "PD file")->check(CLI::ExistingFile);
  cutb->add_option("--valuation", valuation, "h-adic valuation of the invariant");

  auto* loll = app.add_subcommand("lollipop-suite", "divisibility of random v-graphs");
  common(loll, false);
  seeded(loll);
  int samples = 100;
  loll->add_option("--samples", samples)->envname("SO3_SAMPLES")->capture_default_str();

  auto* fkb = app.add_subcommand("fkb", "obstruction ideal of a knot in a solid torus");
  common(fkb, false);
  std::string fkb_pd, axis, knot;
  std::optional<int> framing;
  bool plus = false;
  std::vector<std::string> against;
  fkb->add_option("--pd", fkb_pd, "PD file")->required()->check(CLI::ExistingFile);
  fkb->add_option("--axis", axis, "axis component")->required();
  fkb->add_option("--surgery", knot, "component whose framing is set");
  fkb->add_option("--framing", framing, "framing of the --surgery component");
  fkb->add_flag("--plus", plus, "use the refined ring when p = 1 mod 4");
  fkb->add_option("--against", against, "PD files of closed manifolds to test")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.width_cap < 2) throw UsageError("--width-cap must be >= 2");
    default_engine_config().width_cap = cfg.width_cap;
    Report r;
    CLI::App* sub = app.get_subcommands().front();
    if (sub == dims) r = cmd_dims(cfg);
    else if (sub == colorings) r = cmd_colorings(cfg);
    else if (sub == bases) r = cmd_bases(cfg);
    else if (sub == gram) r = cmd_gram(cfg, which, full);
    else if (sub == check) r = cmd_check(cfg, names);
    else if (sub == invariant) r = cmd_invariant(cfg, pd, cargo);
    else if (sub == mtorus) r = cmd_mapping_torus(cfg, nmin, nmax < 0 ? 2 * cfg.p : nmax);
    else if (sub == cutb) r = cmd_cutbound(cfg, cut_pd, valuation);
    else if (sub == loll) r = cmd_lollipop(cfg, samples);
    else r = cmd_fkb(cfg, fkb_pd, axis, knot, framing, plus, against);
    r.command = sub->get_name();
    r.config["width_cap"] = cfg.width_cap;
    render(r, cfg.format, std::cout);
    return r.pass ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DiagramError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const TreeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const WidthExceeded& e) {
    std::cerr << "width cap reached (raise --width-cap): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
}
