#include "model.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace lpg::cli {

using nlohmann::json;

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Groupoid: return "groupoid";
    case ModelKind::Semigroup: return "semigroup";
    case ModelKind::Graph: return "graph";
    case ModelKind::PartialAction: return "partial-action";
    case ModelKind::Action: return "action";
  }
  return "?";
}

namespace {

std::string child(const std::string& at, const std::string& key) { return at + "/" + key; }
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& at, const std::string& key) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(at, key), "required field is missing");
  return *it;
}

int as_int(const json& j, const std::string& at, int lo, int hi) {
  if (!j.is_number_integer()) throw SchemaError(at, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi)
    throw SchemaError(at, "index " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
  return static_cast<int>(v);
}

int as_count(const json& j, const std::string& at, int hi = 4096) { return as_int(j, at, 1, hi); }

std::vector<int> int_list(const json& j, const std::string& at, int lo, int hi) {
  if (!j.is_array()) throw SchemaError(at, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], child(at, i), lo, hi));
  return out;
}

std::vector<std::vector<int>> int_table(const json& j, const std::string& at, std::size_t rows, std::size_t cols,
                                        int lo, int hi) {
  if (!j.is_array() || j.size() != rows)
    throw SchemaError(at, "expected an array of " + std::to_string(rows) + " rows");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < rows; ++i) {
    out.push_back(int_list(j[i], child(at, i), lo, hi));
    if (out.back().size() != cols)
      throw SchemaError(child(at, i), "expected " + std::to_string(cols) + " entries");
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw SchemaError(child(at, i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::string literal(const json& j, const std::string& at) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      parse_rational(s);
    } catch (const DomainError& e) {
      throw SchemaError(at, e.what());
    }
    return s;
  }
  throw SchemaError(at, "expected a scalar as an integer, a decimal string or \"n/d\"");
}

ScalarText scalar(const json& j, const std::string& at) {
  ScalarText out;
  out.where = at;
  if (j.is_array()) {
    if (j.size() != 2) throw SchemaError(at, "complex scalars are [re, im] pairs");
    out.re = literal(j[0], child(at, 0));
    out.im = literal(j[1], child(at, 1));
  } else if (j.is_string() && (j == "i" || j == "-i")) {
    out.re = "0";
    out.im = j == "i" ? "1" : "-1";
  } else {
    out.re = literal(j, at);
  }
  return out;
}

GroupSpec group_spec(const json& j, const std::string& at) {
  GroupSpec g;
  if (j.is_string()) {
    g.name = j.get<std::string>();
    try {
      build_group(g);
    } catch (const std::exception& e) {
      throw SchemaError(at, e.what());
    }
    return g;
  }
  g.name = "table";
  const auto& t = field(j, at, "table");
  const std::size_t n = t.is_array() ? t.size() : 0;
  if (n == 0) throw SchemaError(child(at, "table"), "expected a nonempty square table");
  g.table = int_table(t, child(at, "table"), n, n, 0, static_cast<int>(n) - 1);
  if (j.contains("names")) g.names = string_list(j["names"], child(at, "names"));
  return g;
}

/// Arrow reference by index or label.
int arrow_ref(const json& j, const std::string& at, const GroupoidTables& t) {
  if (j.is_string()) {
    for (int a = 0; a < t.arrows; ++a)
      if (!t.labels.empty() && t.labels[a] == j.get<std::string>()) return a;
    throw SchemaError(at, "no arrow labelled " + j.get<std::string>());
  }
  return as_int(j, at, 0, t.arrows - 1);
}

void parse_groupoid(ModelFile& m, const json& j) {
  const std::string at = "/groupoid";
  const auto& g = field(j, "", "groupoid");
  if (!g.is_object()) throw SchemaError(at, "expected an object");
  if (g.contains("pair")) {
    m.tables = pair_groupoid(as_count(g["pair"], child(at, "pair"), 64)).tables();
  } else if (g.contains("group")) {
    m.tables = group_groupoid(build_group(group_spec(g["group"], child(at, "group")))).tables();
  } else if (g.contains("units")) {
    m.tables = unit_groupoid(as_count(g["units"], child(at, "units"))).tables();
  } else if (g.contains("deaconu_renault")) {
    const auto& d = g["deaconu_renault"];
    const std::string here = child(at, "deaconu_renault");
    const int k = as_count(field(d, here, "points"), child(here, "points"), 256);
    auto phi = int_list(field(d, here, "phi"), child(here, "phi"), -1, k - 1);
    if (static_cast<int>(phi.size()) != k) throw SchemaError(child(here, "phi"), "expected one image per point");
    m.tables = deaconu_renault(k, phi, false).groupoid.tables();
  } else {
    GroupoidTables t;
    t.arrows = as_count(field(g, at, "arrows"), child(at, "arrows"), 512);
    const int n = t.arrows;
    for (const char* key : {"r", "d", "inv"}) {
      auto v = int_list(field(g, at, key), child(at, key), 0, n - 1);
      if (static_cast<int>(v.size()) != n) throw SchemaError(child(at, key), "expected one entry per arrow");
      (key[0] == 'r' ? t.r : key[0] == 'd' ? t.d : t.inv) = std::move(v);
    }
    t.compose = int_table(field(g, at, "compose"), child(at, "compose"), n, n, -1, n - 1);
    if (g.contains("labels")) {
      t.labels = string_list(g["labels"], child(at, "labels"));
      if (static_cast<int>(t.labels.size()) != n) throw SchemaError(child(at, "labels"), "expected one label per arrow");
    }
    m.tables = std::move(t);
  }
  if (j.contains("cocycle")) {
    const auto& c = j["cocycle"];
    if (!c.is_array()) throw SchemaError("/cocycle", "expected an array of [a, b, value] entries");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string here = child("/cocycle", i);
      if (!c[i].is_array() || c[i].size() != 3) throw SchemaError(here, "expected [a, b, value]");
      m.cocycle.emplace_back(arrow_ref(c[i][0], child(here, 0), m.tables), arrow_ref(c[i][1], child(here, 1), m.tables),
                             scalar(c[i][2], child(here, 2)));
    }
  }
  if (j.contains("bisections")) {
    const auto& b = j["bisections"];
    if (!b.is_array()) throw SchemaError("/bisections", "expected an array of arrow lists");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string here = child("/bisections", i);
      if (!b[i].is_array()) throw SchemaError(here, "expected an array of arrows");
      std::vector<int> arrows;
      for (std::size_t k = 0; k < b[i].size(); ++k) arrows.push_back(arrow_ref(b[i][k], child(here, k), m.tables));
      m.bisections.push_back(std::move(arrows));
    }
  }
  if (j.contains("element")) {
    const auto& e = j["element"];
    if (!e.is_array()) throw SchemaError("/element", "expected an array of [arrow, value] entries");
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string here = child("/element", i);
      if (!e[i].is_array() || e[i].size() != 2) throw SchemaError(here, "expected [arrow, value]");
      m.element.emplace_back(arrow_ref(e[i][0], child(here, 0), m.tables), scalar(e[i][1], child(here, 1)));
    }
  }
}

SemigroupSpec semigroup_spec(const json& j, const std::string& at) {
  SemigroupSpec s;
  if (j.contains("exel")) {
    s.exel = group_spec(j["exel"], child(at, "exel"));
    return s;
  }
  const auto& star = field(j, at, "star");
  const std::size_t n = star.is_array() ? star.size() : 0;
  if (n == 0) throw SchemaError(child(at, "star"), "expected a nonempty array");
  s.star = int_list(star, child(at, "star"), 0, static_cast<int>(n) - 1);
  s.mult = int_table(field(j, at, "mult"), child(at, "mult"), n, n, 0, static_cast<int>(n) - 1);
  if (j.contains("labels")) {
    s.labels = string_list(j["labels"], child(at, "labels"));
    if (s.labels.size() != n) throw SchemaError(child(at, "labels"), "expected one label per element");
  }
  return s;
}

std::size_t semigroup_size(const SemigroupSpec& s) {
  if (!s.exel) return s.star.size();
  return exel_semigroup(build_group(*s.exel)).elements.size();
}

void parse_maps(ModelFile& m, const json& j, const char* key, std::size_t count) {
  m.points = as_count(field(j, "", "points"), "/points", 256);
  m.maps = int_table(field(j, "", key), std::string("/") + key, count, m.points, -1, m.points - 1);
  if (j.contains("twist")) {
    const auto& t = j["twist"];
    if (!t.is_array()) throw SchemaError("/twist", "expected an array of [s, t, x, value] entries");
    const int n = static_cast<int>(count);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string here = child("/twist", i);
      if (!t[i].is_array() || t[i].size() != 4) throw SchemaError(here, "expected [s, t, x, value]");
      m.twist.push_back({as_int(t[i][0], child(here, 0), 0, n - 1), as_int(t[i][1], child(here, 1), 0, n - 1),
                         as_int(t[i][2], child(here, 2), 0, m.points - 1), scalar(t[i][3], child(here, 3))});
    }
  }
}

void parse_graph(ModelFile& m, const json& j) {
  const auto& v = field(j, "", "vertices");
  if (v.is_array()) {
    m.vertex_names = string_list(v, "/vertices");
    m.vertices = static_cast<int>(m.vertex_names.size());
    if (m.vertices == 0) throw SchemaError("/vertices", "at least one vertex is required");
  } else {
    m.vertices = as_count(v, "/vertices");
  }
  auto vertex = [&](const json& x, const std::string& at) {
    if (x.is_string()) {
      for (int k = 0; k < static_cast<int>(m.vertex_names.size()); ++k)
        if (m.vertex_names[k] == x.get<std::string>()) return k;
      throw SchemaError(at, "no vertex named " + x.get<std::string>());
    }
    return as_int(x, at, 0, m.vertices - 1);
  };
  const auto& edges = j.contains("edges") ? j["edges"] : json::array();
  if (!edges.is_array()) throw SchemaError("/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string here = child("/edges", i);
    const auto& e = edges[i];
    if (!e.is_object()) throw SchemaError(here, "expected {name, range, source}");
    m.range.push_back(vertex(field(e, here, "range"), child(here, "range")));
    m.source_of.push_back(vertex(field(e, here, "source"), child(here, "source")));
    m.edge_names.push_back(e.contains("name") && e["name"].is_string() ? e["name"].get<std::string>()
                                                                        : "e" + std::to_string(i));
  }
  if (j.contains("convention")) {
    const auto& c = j["convention"];
    if (c == "standard") m.convention = Regularity::Standard;
    else if (c == "printed") m.convention = Regularity::Printed;
    else throw SchemaError("/convention", "expected \"standard\" or \"printed\"");
  }
}

}  // namespace

ModelFile parse_model_json(const json& j, const std::string& path) {
  ModelFile m;
  m.path = path;
  m.source = j;
  const auto& kind = field(j, "", "kind");
  const std::map<std::string, ModelKind> kinds = {{"groupoid", ModelKind::Groupoid},
                                                  {"semigroup", ModelKind::Semigroup},
                                                  {"graph", ModelKind::Graph},
                                                  {"partial-action", ModelKind::PartialAction},
                                                  {"action", ModelKind::Action}};
  if (!kind.is_string() || !kinds.count(kind.get<std::string>()))
    throw SchemaError("/kind", "expected one of groupoid, semigroup, graph, partial-action, action");
  m.kind = kinds.at(kind.get<std::string>());
  if (j.contains("mode")) {
    if (j["mode"] == "real") m.mode = FieldMode::Real;
    else if (j["mode"] == "complex") m.mode = FieldMode::Complex;
    else throw SchemaError("/mode", "expected \"real\" or \"complex\"");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("/seed", "expected a nonnegative integer");
    m.seed = j["seed"].get<std::uint64_t>();
  }
  switch (m.kind) {
    case ModelKind::Groupoid:
      parse_groupoid(m, j);
      break;
    case ModelKind::Semigroup:
      m.semigroup = semigroup_spec(field(j, "", "semigroup"), "/semigroup");
      break;
    case ModelKind::Action: {
      m.semigroup = semigroup_spec(field(j, "", "semigroup"), "/semigroup");
      std::size_t n = 0;
      try {
        n = semigroup_size(m.semigroup);
      } catch (const std::exception& e) {
        throw SchemaError("/semigroup", e.what());
      }
      parse_maps(m, j, "maps", n);
      break;
    }
    case ModelKind::PartialAction:
      m.group = group_spec(field(j, "", "group"), "/group");
      parse_maps(m, j, "theta", m.group.name == "table" ? m.group.table.size() : build_group(m.group).size());
      break;
    case ModelKind::Graph:
      parse_graph(m, j);
      break;
  }
  return m;
}

ModelFile parse_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C"
    std::string what = e.what();
    auto pos = what.find("line ");
    throw SchemaError(pos == std::string::npos ? "" : what.substr(pos, what.find(':', pos) - pos), what);
  }
  return parse_model_json(j, path);
}

template <>
Rational scalar_value<Rational>(const ScalarText& s) {
  if (parse_rational(s.im) != 0) throw SchemaError(s.where, "complex scalar in the real mode");
  return parse_rational(s.re);
}

template <>
GaussRational scalar_value<GaussRational>(const ScalarText& s) {
  return GaussRational(parse_rational(s.re), parse_rational(s.im));
}

FiniteGroup build_group(const GroupSpec& g) {
  if (g.name == "table") return FiniteGroup::validate(g.table, g.names);
  if (g.name == "trivial") return FiniteGroup::trivial();
  if (g.name == "Z2xZ2" || g.name == "klein") return FiniteGroup::klein();
  if (g.name == "S3") return FiniteGroup::symmetric3();
  if (g.name.size() > 1 && g.name[0] == 'Z' && g.name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int n = std::stoi(g.name.substr(1));
    if (n >= 1 && n <= 64) return FiniteGroup::cyclic(n);
  }
  throw DomainError("unknown group " + g.name + " (expected Z<n>, Z2xZ2, S3, trivial or a table)");
}

ISemigroup build_semigroup(const SemigroupSpec& s) {
  if (s.exel) return exel_semigroup(build_group(*s.exel)).semigroup;
  return validate_inverse_semigroup(s.mult, s.star, s.labels);
}

std::shared_ptr<const Graph> build_graph(const ModelFile& m) {
  return classify_graph(m.vertices, m.range, m.source_of, m.convention, m.vertex_names.empty() ? std::vector<std::string>{} : m.vertex_names,
                        m.edge_names);
}

}  // namespace lpg::cli
