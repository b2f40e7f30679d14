#include "lpgroupoid/graphalg.hpp"

#include <algorithm>
#include <deque>

namespace lpg {

std::shared_ptr<const Graph> classify_graph(int vertices, std::vector<int> range, std::vector<int> source,
                                            Regularity convention, std::vector<std::string> vertex_names,
                                            std::vector<std::string> edge_names) {
  if (vertices < 1) throw AxiomError("graph: at least one vertex is required");
  if (range.size() != source.size()) throw AxiomError("graph: range and source lists differ in length");
  const int m = static_cast<int>(range.size());
  for (int e = 0; e < m; ++e)
    if (range[e] < 0 || range[e] >= vertices || source[e] < 0 || source[e] >= vertices)
      throw AxiomError("graph: endpoint of edge " + std::to_string(e) + " out of range");
  if (vertex_names.empty())
    for (int v = 0; v < vertices; ++v) vertex_names.push_back("v" + std::to_string(v));
  if (edge_names.empty())
    for (int e = 0; e < m; ++e) edge_names.push_back("e" + std::to_string(e));
  if (static_cast<int>(vertex_names.size()) != vertices || static_cast<int>(edge_names.size()) != m)
    throw AxiomError("graph: name count mismatch");
  auto q = std::make_shared<Graph>();
  q->vertices = vertices;
  q->range = std::move(range);
  q->source = std::move(source);
  q->vertex_names = std::move(vertex_names);
  q->edge_names = std::move(edge_names);
  q->convention = convention;
  q->edges_into.assign(vertices, {});
  for (int e = 0; e < m; ++e) q->edges_into[q->range[e]].push_back(e);
  const std::size_t threshold = convention == Regularity::Standard ? 0 : 1;
  for (int v = 0; v < vertices; ++v) q->regular.push_back(q->edges_into[v].size() > threshold);
  // Kahn's algorithm on s(e) -> r(e).
  std::vector<int> indeg(vertices, 0);
  for (int e = 0; e < m; ++e) ++indeg[q->range[e]];
  std::deque<int> ready;
  for (int v = 0; v < vertices; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    ++seen;
    for (int e = 0; e < m; ++e)
      if (q->source[e] == v && --indeg[q->range[e]] == 0) ready.push_back(q->range[e]);
  }
  q->acyclic = seen == vertices;
  return q;
}

Path vertex_path(int v) { return Path{v, {}}; }

Path edge_path(const Graph& q, int e) { return Path{q.range.at(e), {e}}; }

int path_source(const Graph& q, const Path& p) { return p.e.empty() ? p.v : q.source[p.e.back()]; }

bool is_path(const Graph& q, const Path& p) {
  if (p.v < 0 || p.v >= q.vertices) return false;
  int at = p.v;
  for (int e : p.e) {
    if (e < 0 || e >= q.edges() || q.range[e] != at) return false;
    at = q.source[e];
  }
  return true;
}

Path concat(const Graph& q, const Path& mu, const Path& alpha) {
  if (path_source(q, mu) != alpha.v)
    throw DomainError("concat: s(" + path_name(q, mu) + ") != r(" + path_name(q, alpha) + ")");
  Path out = mu;
  out.e.insert(out.e.end(), alpha.e.begin(), alpha.e.end());
  return out;
}

std::optional<Path> strip_prefix(const Graph& q, const Path& mu, const Path& alpha) {
  if (mu.v != alpha.v || mu.e.size() > alpha.e.size()) return std::nullopt;
  if (!std::equal(mu.e.begin(), mu.e.end(), alpha.e.begin())) return std::nullopt;
  return Path{path_source(q, mu), std::vector<int>(alpha.e.begin() + mu.length(), alpha.e.end())};
}

std::string path_name(const Graph& q, const Path& p) {
  if (p.e.empty()) return q.vertex_names[p.v];
  std::string out;
  for (int e : p.e) out += q.edge_names[e];
  return out;
}

std::vector<Path> all_paths(const Graph& q, int max_length) {
  if (max_length < 0 && !q.acyclic) throw UnsupportedError("all_paths: a cyclic graph has infinitely many paths");
  std::vector<Path> out;
  for (int v = 0; v < q.vertices; ++v) out.push_back(vertex_path(v));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (max_length >= 0 && out[i].length() >= max_length) continue;
    const int v = path_source(q, out[i]);
    for (int e : q.edges_into[v]) {
      Path next = out[i];
      next.e.push_back(e);
      out.push_back(std::move(next));
    }
  }
  return out;
}

PathPair make_pair_element(const Graph& q, Path mu, Path nu) {
  if (!is_path(q, mu) || !is_path(q, nu)) throw DomainError("make_pair_element: not a path");
  if (path_source(q, mu) != path_source(q, nu))
    throw DomainError("make_pair_element: s(" + path_name(q, mu) + ") != s(" + path_name(q, nu) + ")");
  return PathPair{false, std::move(mu), std::move(nu)};
}

PathPair sq_mul(const Graph& q, const PathPair& a, const PathPair& b) {
  if (a.zero || b.zero) return PathPair::zero_element();
  if (auto rest = strip_prefix(q, a.nu, b.mu)) return PathPair{false, concat(q, a.mu, *rest), b.nu};
  if (auto rest = strip_prefix(q, b.mu, a.nu)) return PathPair{false, a.mu, concat(q, b.nu, *rest)};
  return PathPair::zero_element();
}

PathPair sq_star(const PathPair& a) { return a.zero ? a : PathPair{false, a.nu, a.mu}; }

std::string pair_name(const Graph& q, const PathPair& a) {
  if (a.zero) return "0";
  return "(" + path_name(q, a.mu) + "," + path_name(q, a.nu) + ")";
}

GraphSemigroup graph_inverse_semigroup(std::shared_ptr<const Graph> q, bool validate) {
  const auto paths = all_paths(*q);
  GraphSemigroup out;
  for (const auto& mu : paths)
    for (const auto& nu : paths)
      if (path_source(*q, mu) == path_source(*q, nu)) out.elements.push_back(PathPair{false, mu, nu});
  out.elements.push_back(PathPair::zero_element());
  std::sort(out.elements.begin(), out.elements.end());
  for (std::size_t i = 0; i < out.elements.size(); ++i) out.index[out.elements[i]] = static_cast<int>(i);
  const std::size_t m = out.elements.size();
  std::vector<int> flat(m * m), star(m);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    star[a] = out.index.at(sq_star(out.elements[a]));
    labels.push_back(pair_name(*q, out.elements[a]));
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = out.index.at(sq_mul(*q, out.elements[a], out.elements[b]));
  }
  const int zero = out.index.at(PathPair::zero_element());
  if (validate) {
    std::vector<std::vector<int>> mult(m, std::vector<int>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) mult[a][b] = flat[a * m + b];
    out.semigroup = validate_inverse_semigroup(mult, star, labels, zero);
  } else {
    out.semigroup = make_trusted_semigroup(std::move(flat), std::move(star), zero, std::move(labels));
  }
  return out;
}

GraphSemilattice graph_idempotent_semilattice(const Graph& q) {
  GraphSemilattice out;
  out.paths = all_paths(q);
  const int n = static_cast<int>(out.paths.size());
  out.zero = n;
  MeetTable meet(n + 1, std::vector<int>(n + 1, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (strip_prefix(q, out.paths[i], out.paths[j])) meet[i][j] = j;
      else if (strip_prefix(q, out.paths[j], out.paths[i])) meet[i][j] = i;
    }
  out.lattice = FiniteSemilattice::validate(std::move(meet), n);
  return out;
}

BoundaryPaths boundary_paths(const Graph& q) {
  if (!q.acyclic) throw UnsupportedError("boundary_paths: the boundary of a cyclic graph is infinite");
  BoundaryPaths out;
  for (const auto& p : all_paths(q))
    if (!q.regular[path_source(q, p)]) out.points.push_back(p);
  for (std::size_t i = 0; i < out.points.size(); ++i) out.index[out.points[i]] = static_cast<int>(i);
  for (const auto& p : out.points) {
    if (p.e.empty()) {
      out.shift.push_back(-1);
      continue;
    }
    Path rest{q.source[p.e.front()], std::vector<int>(p.e.begin() + 1, p.e.end())};
    out.shift.push_back(out.index.at(rest));
  }
  return out;
}

std::vector<int> GraphGroupoid::cylinder_points(const Path& mu) const {
  std::vector<int> out;
  for (std::size_t x = 0; x < boundary.points.size(); ++x)
    if (strip_prefix(*graph, mu, boundary.points[x])) out.push_back(static_cast<int>(x));
  return out;
}

Bisection GraphGroupoid::cylinder(const PathPair& a) const {
  if (a.zero) return Bisection{};
  std::vector<int> arrows;
  const Path base = vertex_path(path_source(*graph, a.mu));
  for (int x : cylinder_points(base)) {
    const Path& tail = boundary.points[x];
    const int y = boundary.index.at(concat(*graph, a.mu, tail));
    const int z = boundary.index.at(concat(*graph, a.nu, tail));
    arrows.push_back(arrow.at({y, z}));
  }
  return make_bisection(*groupoid, std::move(arrows));
}

GraphGroupoid graph_groupoid(std::shared_ptr<const Graph> q, bool bisections) {
  GraphGroupoid out;
  out.graph = q;
  out.boundary = boundary_paths(*q);
  out.dr = deaconu_renault(static_cast<int>(out.boundary.points.size()), out.boundary.shift, bisections);
  out.groupoid = std::make_shared<const FiniteGroupoid>(out.dr.groupoid);
  for (std::size_t a = 0; a < out.dr.triples.size(); ++a)
    out.arrow[{out.dr.triples[a].y, out.dr.triples[a].x}] = static_cast<int>(a);
  return out;
}

}  // namespace lpg
