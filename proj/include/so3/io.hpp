// Text and JSON formats.
//
// PD files, one item per line, '#' starts a comment line:
//   X a b c d                                   crossing, PD convention of link.hpp
//   component NAME ROLE framing=K color=C arc=N  component through arc N
//   unknot NAME ROLE framing=K color=C          free unknot, no crossings
// ROLE is surgery, cargo or axis.  color defaults to 1, framing to 0.
//
// Tree files:
//   tree genus=G points=c1,c2,...
//   vertices N
//   edge KIND U V [fixed=F] [hole=H]            KIND: loop stick ordinary point stub
//   around V E1 E2 E3                           cyclic order at vertex V
//   hole I loop=E stick=E vertex=V
//   trunk E
#ifndef SO3_IO_HPP
#define SO3_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "so3/cyclo.hpp"
#include "so3/link.hpp"
#include "so3/lollipop.hpp"

namespace so3 {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCycloBasisTag = "zeta4p-power-basis";
inline constexpr int kJsonSchemaVersion = 1;

// {"basis": ..., "p": p, "den": "..", "num": ["..", ...]}; coefficients of
// z^0 .. z^{2(p-1)-1}, z = exp(2 pi i / 4p), as decimal strings.
inline nlohmann::json to_json(const CycloElem& x) {
  nlohmann::json j;
  j["basis"] = kCycloBasisTag;
  j["p"] = x.ctx().p;
  j["den"] = x.denominator().get_str();
  auto& num = j["num"] = nlohmann::json::array();
  for (const auto& v : x.numerators()) num.push_back(v.get_str());
  return j;
}

inline CycloElem cyclo_from_json(const nlohmann::json& j) {
  if (j.at("basis").get<std::string>() != kCycloBasisTag) throw FormatError("unknown basis tag");
  const auto& c = make_context(j.at("p").get<int>());
  std::vector<mpz_class> num;
  for (const auto& v : j.at("num")) num.emplace_back(v.get<std::string>());
  return CycloElem(c, std::move(num), mpz_class(j.at("den").get<std::string>()));
}

namespace detail {

inline std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> w;
  for (std::string s; in >> s;) w.push_back(s);
  return w;
}

inline int parse_int(const std::string& s, int lineno) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
}

// key=value pairs after the positional words
inline std::map<std::string, std::string> keyvals(const std::vector<std::string>& w, size_t from, int lineno) {
  std::map<std::string, std::string> kv;
  for (size_t i = from; i < w.size(); ++i) {
    auto eq = w[i].find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": expected key=value, got '" + w[i] + "'");
    kv[w[i].substr(0, eq)] = w[i].substr(eq + 1);
  }
  return kv;
}

inline Role parse_role(const std::string& s, int lineno) {
  if (s == "surgery") return Role::Surgery;
  if (s == "cargo") return Role::Cargo;
  if (s == "axis") return Role::Axis;
  throw FormatError("line " + std::to_string(lineno) + ": unknown role '" + s + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace detail

inline PDLink parse_pd(const std::string& text) {
  PDLink L;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line[0] == '#') {
      L.header.push_back(line);
      continue;
    }
    auto w = detail::words(line);
    if (w.empty()) continue;
    if (w[0] == "X") {
      if (w.size() != 5) throw FormatError("line " + std::to_string(lineno) + ": a crossing needs 4 arcs");
      std::array<int, 4> x;
      for (int k = 0; k < 4; ++k) x[k] = detail::parse_int(w[k + 1], lineno);
      L.crossings.push_back(x);
    } else if (w[0] == "component" || w[0] == "unknot") {
      if (w.size() < 3) throw FormatError("line " + std::to_string(lineno) + ": component needs a name and a role");
      LinkComponent c;
      c.name = w[1];
      c.role = detail::parse_role(w[2], lineno);
      auto kv = detail::keyvals(w, 3, lineno);
      for (const auto& [k, v] : kv) {
        if (k == "framing") c.framing = detail::parse_int(v, lineno);
        else if (k == "color") c.color = detail::parse_int(v, lineno);
        else if (k == "arc" && w[0] == "component") c.seed_arc = detail::parse_int(v, lineno);
        else throw FormatError("line " + std::to_string(lineno) + ": unknown key '" + k + "'");
      }
      if (w[0] == "component" && c.seed_arc < 0) throw FormatError("line " + std::to_string(lineno) + ": component needs arc=");
      if (L.find(c.name) >= 0) throw FormatError("line " + std::to_string(lineno) + ": duplicate component " + c.name);
      L.comps.push_back(c);
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown item '" + w[0] + "'");
    }
  }
  return L;
}

inline PDLink read_pd(const std::string& path) { return parse_pd(detail::read_file(path)); }

inline std::string write_pd(const PDLink& L) {
  std::ostringstream out;
  for (const auto& h : L.header) out << h << "\n";
  for (const auto& x : L.crossings) out << "X " << x[0] << " " << x[1] << " " << x[2] << " " << x[3] << "\n";
  for (const auto& c : L.comps) {
    out << (c.seed_arc >= 0 ? "component " : "unknot ") << c.name << " " << role_name(c.role) << " framing=" << c.framing
        << " color=" << c.color;
    if (c.seed_arc >= 0) out << " arc=" << c.seed_arc;
    out << "\n";
  }
  return out.str();
}

inline EdgeKind parse_edge_kind(const std::string& s, int lineno) {
  for (EdgeKind k : {EdgeKind::Loop, EdgeKind::Stick, EdgeKind::Ordinary, EdgeKind::Point, EdgeKind::Stub})
    if (s == edge_kind_name(k)) return k;
  throw FormatError("line " + std::to_string(lineno) + ": unknown edge kind '" + s + "'");
}

inline std::string write_tree(const LollipopTree& t) {
  std::ostringstream out;
  out << "tree genus=" << t.g << " points=";
  for (size_t i = 0; i < t.points.size(); ++i) out << (i ? "," : "") << t.points[i];
  out << "\nvertices " << t.nverts << "\n";
  for (const auto& e : t.edges) {
    out << "edge " << edge_kind_name(e.kind) << " " << e.u << " " << e.v;
    if (e.fixed >= 0) out << " fixed=" << e.fixed;
    if (e.hole >= 0) out << " hole=" << e.hole;
    out << "\n";
  }
  for (int v = 0; v < t.nverts; ++v) {
    out << "around " << v;
    for (int e : t.around[v]) out << " " << e;
    out << "\n";
  }
  for (int i = 0; i < t.g; ++i)
    out << "hole " << i << " loop=" << t.loop_edge[i] << " stick=" << t.stick_edge[i] << " vertex=" << t.loop_vertex[i] << "\n";
  if (t.trunk >= 0) out << "trunk " << t.trunk << "\n";
  return out.str();
}

inline LollipopTree parse_tree(const std::string& text) {
  LollipopTree t;
  std::istringstream in(text);
  int lineno = 0;
  bool seen_head = false;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    auto w = detail::words(line);
    if (w.empty()) continue;
    auto need = [&](size_t n) {
      if (w.size() < n) throw FormatError("line " + std::to_string(lineno) + ": too few fields");
    };
    if (w[0] == "tree") {
      auto kv = detail::keyvals(w, 1, lineno);
      t.g = detail::parse_int(kv.at("genus"), lineno);
      std::string pts = kv.count("points") ? kv.at("points") : "";
      std::istringstream ps(pts);
      for (std::string s; std::getline(ps, s, ',');)
        if (!s.empty()) t.points.push_back(detail::parse_int(s, lineno));
      t.loop_edge.assign(t.g, -1);
      t.stick_edge.assign(t.g, -1);
      t.loop_vertex.assign(t.g, -1);
      seen_head = true;
    } else if (!seen_head) {
      throw FormatError("line " + std::to_string(lineno) + ": tree header must come first");
    } else if (w[0] == "vertices") {
      need(2);
      t.nverts = detail::parse_int(w[1], lineno);
      t.around.assign(t.nverts, {});
    } else if (w[0] == "edge") {
      need(4);
      TreeEdge e{parse_edge_kind(w[1], lineno), detail::parse_int(w[2], lineno), detail::parse_int(w[3], lineno)};
      for (const auto& [k, v] : detail::keyvals(w, 4, lineno)) {
        if (k == "fixed") e.fixed = detail::parse_int(v, lineno);
        else if (k == "hole") e.hole = detail::parse_int(v, lineno);
        else throw FormatError("line " + std::to_string(lineno) + ": unknown key '" + k + "'");
      }
      if (e.u < 0 || e.u >= t.nverts || e.v < 0 || e.v >= t.nverts) throw FormatError("line " + std::to_string(lineno) + ": vertex out of range");
      t.edges.push_back(e);
    } else if (w[0] == "around") {
      need(2);
      int v = detail::parse_int(w[1], lineno);
      if (v < 0 || v >= t.nverts) throw FormatError("line " + std::to_string(lineno) + ": vertex out of range");
      for (size_t i = 2; i < w.size(); ++i) t.around[v].push_back(detail::parse_int(w[i], lineno));
    } else if (w[0] == "hole") {
      need(2);
      int i = detail::parse_int(w[1], lineno);
      if (i < 0 || i >= t.g) throw FormatError("line " + std::to_string(lineno) + ": hole out of range");
      auto kv = detail::keyvals(w, 2, lineno);
      t.loop_edge[i] = detail::parse_int(kv.at("loop"), lineno);
      t.stick_edge[i] = detail::parse_int(kv.at("stick"), lineno);
      t.loop_vertex[i] = detail::parse_int(kv.at("vertex"), lineno);
    } else if (w[0] == "trunk") {
      need(2);
      t.trunk = detail::parse_int(w[1], lineno);
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown item '" + w[0] + "'");
    }
  }
  try {
    t.validate();
  } catch (const TreeError& e) {
    throw FormatError(std::string("tree: ") + e.what());
  }
  return t;
}

inline LollipopTree read_tree(const std::string& path) { return parse_tree(detail::read_file(path)); }

}  // namespace so3

#endif
