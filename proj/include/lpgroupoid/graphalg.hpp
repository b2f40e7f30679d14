// Directed graphs, the graph inverse semigroup, boundary paths and the graph
// groupoid, Leavitt path algebra normal forms and Q-families.

#ifndef LPGROUPOID_GRAPHALG_HPP
#define LPGROUPOID_GRAPHALG_HPP

#include "lpgroupoid/cocycle.hpp"
#include "lpgroupoid/galg.hpp"
#include "lpgroupoid/groupoid.hpp"
#include "lpgroupoid/reps.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lpg {

/// Standard: regular iff 0 < |r^-1(v)|. Printed: regular iff 1 < |r^-1(v)|.
enum class Regularity { Standard, Printed };

struct Graph {
  int vertices = 0;
  std::vector<int> range, source;  // r(e), s(e)
  std::vector<std::string> vertex_names, edge_names;
  Regularity convention = Regularity::Standard;
  std::vector<char> regular;
  std::vector<std::vector<int>> edges_into;  // r^-1(v), increasing
  bool acyclic = true;

  int edges() const { return static_cast<int>(range.size()); }
};

std::shared_ptr<const Graph> classify_graph(int vertices, std::vector<int> range, std::vector<int> source,
                                            Regularity convention = Regularity::Standard,
                                            std::vector<std::string> vertex_names = {},
                                            std::vector<std::string> edge_names = {});

/// mu = e_1 ... e_n with s(e_i) = r(e_{i+1}); v = r(mu), the whole path when n = 0.
struct Path {
  int v = 0;
  std::vector<int> e;
  auto operator<=>(const Path&) const = default;
  int length() const { return static_cast<int>(e.size()); }
};

Path vertex_path(int v);
Path edge_path(const Graph& q, int e);
int path_source(const Graph& q, const Path& p);
bool is_path(const Graph& q, const Path& p);
/// mu alpha; throws when s(mu) != r(alpha).
Path concat(const Graph& q, const Path& mu, const Path& alpha);
/// alpha' with alpha = mu alpha', if any.
std::optional<Path> strip_prefix(const Graph& q, const Path& mu, const Path& alpha);
std::string path_name(const Graph& q, const Path& p);
/// Every path of length at most max_length (all paths when negative; acyclic only).
std::vector<Path> all_paths(const Graph& q, int max_length = -1);

/// (mu, nu) with s(mu) = s(nu), or the zero.
struct PathPair {
  bool zero = false;
  Path mu, nu;
  auto operator<=>(const PathPair&) const = default;
  static PathPair zero_element() { return {true, {}, {}}; }
};

PathPair make_pair_element(const Graph& q, Path mu, Path nu);
PathPair sq_mul(const Graph& q, const PathPair& a, const PathPair& b);
PathPair sq_star(const PathPair& a);
std::string pair_name(const Graph& q, const PathPair& a);

struct GraphSemigroup {
  ISemigroup semigroup;
  std::vector<PathPair> elements;
  std::map<PathPair, int> index;
};

/// S_Q for an acyclic graph, all pairs plus zero. With validate set the tables
/// go through validate_inverse_semigroup.
GraphSemigroup graph_inverse_semigroup(std::shared_ptr<const Graph> q, bool validate = false);

/// E(S_Q) built directly: element i is (paths[i], paths[i]), the last one is 0.
struct GraphSemilattice {
  FiniteSemilattice lattice;
  std::vector<Path> paths;
  int zero = -1;
};

GraphSemilattice graph_idempotent_semilattice(const Graph& q);

struct BoundaryPaths {
  std::vector<Path> points;
  std::map<Path, int> index;
  std::vector<int> shift;  // -1 on vertices
};

BoundaryPaths boundary_paths(const Graph& q);

struct GraphGroupoid {
  std::shared_ptr<const Graph> graph;
  BoundaryPaths boundary;
  DeaconuRenault dr;
  std::shared_ptr<const FiniteGroupoid> groupoid;
  std::map<std::pair<int, int>, int> arrow;  // (range point, domain point)

  /// Points of Z(mu).
  std::vector<int> cylinder_points(const Path& mu) const;
  /// Z(mu, nu) = {(mu x, nu x)}.
  Bisection cylinder(const PathPair& a) const;
};

GraphGroupoid graph_groupoid(std::shared_ptr<const Graph> q, bool bisections = false);

/// Formal combination of t_mu t_nu^* over one graph.
template <Scalar T>
class LPAElement {
 public:
  LPAElement() = default;
  explicit LPAElement(std::shared_ptr<const Graph> q) : graph_(std::move(q)) {}

  static LPAElement term(std::shared_ptr<const Graph> q, const Path& mu, const Path& nu, T c = T(1)) {
    LPAElement out(q);
    out.add(make_pair_element(*q, mu, nu), c);
    return out;
  }
  static LPAElement vertex(std::shared_ptr<const Graph> q, int v, T c = T(1)) {
    return term(q, vertex_path(v), vertex_path(v), c);
  }
  static LPAElement edge(std::shared_ptr<const Graph> q, int e, T c = T(1)) {
    const Path p = edge_path(*q, e);
    return term(q, p, vertex_path(q->source[e]), c);
  }
  static LPAElement edge_star(std::shared_ptr<const Graph> q, int e, T c = T(1)) {
    const Path p = edge_path(*q, e);
    return term(q, vertex_path(q->source[e]), p, c);
  }

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  const std::map<PathPair, T>& terms() const { return terms_; }

  void add(const PathPair& a, const T& c) {
    if (a.zero || is_zero(c)) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      terms_.emplace(a, c);
      return;
    }
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  LPAElement& operator+=(const LPAElement& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add(a, c);
    return *this;
  }
  LPAElement& operator-=(const LPAElement& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add(a, -c);
    return *this;
  }
  LPAElement& operator*=(const T& s) {
    if (is_zero(s)) terms_.clear();
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }
  friend LPAElement operator+(LPAElement a, const LPAElement& b) { return a += b; }
  friend LPAElement operator-(LPAElement a, const LPAElement& b) { return a -= b; }
  friend LPAElement operator*(const T& s, LPAElement a) { return a *= s; }
  /// Formal equality of the stored terms; compare normal forms for equality in L(Q).
  friend bool operator==(const LPAElement& a, const LPAElement& b) {
    return a.graph_ == b.graph_ && a.terms_ == b.terms_;
  }

  void check_same(const LPAElement& o) const {
    if (graph_ != o.graph_) throw DomainError("LPAElement: operands live over different graphs");
  }

 private:
  std::shared_ptr<const Graph> graph_;
  std::map<PathPair, T> terms_;
};

template <Scalar T>
LPAElement<T> lpa_multiply(const LPAElement<T>& x, const LPAElement<T>& y);

template <Scalar T>
LPAElement<T> lpa_star(const LPAElement<T>& x) {
  LPAElement<T> out(x.graph_ptr());
  for (const auto& [a, c] : x.terms()) out.add(sq_star(a), conj(c));
  return out;
}

namespace detail {

/// gap = 1_{Z(mu, nu)} minus the cylinders of the children, used below
/// singular vertices that receive edges.
struct Cell {
  PathPair pair;
  bool gap = false;
  auto operator<=>(const Cell&) const = default;
};

/// Cells of b lie inside the cell of a and differ from it.
inline bool cell_below(const Graph& q, const Cell& a, const Cell& b) {
  if (a.gap) return false;
  auto x = strip_prefix(q, a.pair.mu, b.pair.mu);
  auto y = strip_prefix(q, a.pair.nu, b.pair.nu);
  if (!x || !y || *x != *y) return false;
  return x->length() > 0 || b.gap;
}

inline std::vector<Cell> children(const Graph& q, const PathPair& a) {
  std::vector<Cell> out;
  const int v = path_source(q, a.mu);
  for (int e : q.edges_into[v]) {
    const Path pe = edge_path(q, e);
    out.push_back({PathPair{false, concat(q, a.mu, pe), concat(q, a.nu, pe)}, false});
  }
  if (!q.regular[v] && !q.edges_into[v].empty()) out.push_back({a, true});
  return out;
}

}  // namespace detail

/// Canonical form: split terms along Z(mu, nu) = union of Z(mu e, nu e) (plus a
/// gap cell below singular vertices) until the cells are pairwise disjoint,
/// merge every complete family of equal-coefficient siblings into its parent,
/// and write gap cells back as t_mu t_nu^* minus the children.
template <Scalar T>
LPAElement<T> lpa_normalize(const LPAElement<T>& x) {
  const Graph& q = x.graph();
  using detail::Cell;
  std::map<Cell, T> cells;
  auto add = [&](const Cell& c, const T& v) {
    if (is_zero(v)) return;
    auto it = cells.find(c);
    if (it == cells.end()) {
      cells.emplace(c, v);
      return;
    }
    it->second += v;
    if (is_zero(it->second)) cells.erase(it);
  };
  for (const auto& [a, c] : x.terms()) add({a, false}, c);
  for (;;) {
    std::optional<Cell> target;
    for (auto it = cells.begin(); it != cells.end() && !target; ++it)
      for (auto jt = cells.begin(); jt != cells.end(); ++jt)
        if (jt != it && detail::cell_below(q, it->first, jt->first)) {
          target = it->first;
          break;
        }
    if (!target) break;
    const T c = cells.at(*target);
    cells.erase(*target);
    for (const auto& child : detail::children(q, target->pair)) add(child, c);
  }
  for (bool merged = true; merged;) {
    merged = false;
    std::map<PathPair, std::vector<Cell>> families;
    for (const auto& [cell, c] : cells) {
      if (cell.gap) {
        families[cell.pair].push_back(cell);
        continue;
      }
      const auto& mu = cell.pair.mu;
      const auto& nu = cell.pair.nu;
      if (mu.e.empty() || nu.e.empty() || mu.e.back() != nu.e.back()) continue;
      PathPair parent{false, mu, nu};
      parent.mu.e.pop_back();
      parent.nu.e.pop_back();
      families[parent].push_back(cell);
    }
    for (const auto& [parent, present] : families) {
      const auto expected = detail::children(q, parent);
      if (present.size() != expected.size()) continue;
      const T c = cells.at(present.front());
      bool same = true;
      for (const auto& child : expected) {
        auto it = cells.find(child);
        same = same && it != cells.end() && it->second == c;
      }
      if (!same) continue;
      for (const auto& child : expected) cells.erase(child);
      add({parent, false}, c);
      merged = true;
      break;
    }
  }
  LPAElement<T> out(x.graph_ptr());
  for (const auto& [cell, c] : cells) {
    out.add(cell.pair, c);
    if (!cell.gap) continue;
    for (const auto& child : detail::children(q, cell.pair))
      if (!child.gap) out.add(child.pair, -c);
  }
  return out;
}

template <Scalar T>
bool is_zero(const LPAElement<T>& x) {
  return lpa_normalize(x).terms().empty();
}

/// Products of terms through sq_mul, then lpa_normalize.
template <Scalar T>
LPAElement<T> lpa_multiply(const LPAElement<T>& x, const LPAElement<T>& y) {
  x.check_same(y);
  LPAElement<T> out(x.graph_ptr());
  for (const auto& [a, c] : x.terms())
    for (const auto& [b, d] : y.terms()) out.add(sq_mul(x.graph(), a, b), c * d);
  return lpa_normalize(out);
}

/// t_mu t_nu^* -> 1_{Z(mu, nu)} on the graph groupoid (acyclic graphs).
template <Scalar T>
AlgElement<T> lpa_to_groupoid_algebra(const LPAElement<T>& x, const GraphGroupoid& g,
                                      std::shared_ptr<const Cocycle<T>> twist) {
  if (x.graph_ptr() != g.graph) throw DomainError("lpa_to_groupoid_algebra: the element lives over another graph");
  if (&twist->groupoid() != g.groupoid.get())
    throw DomainError("lpa_to_groupoid_algebra: the twist lives on another groupoid");
  AlgElement<T> out(std::move(twist));
  for (const auto& [a, c] : x.terms())
    for (int arrow : g.cylinder(a).arrows) out[arrow] += c;
  return out;
}

template <Scalar T>
struct QFamily {
  std::shared_ptr<const Graph> graph;
  std::vector<Mat<T>> P, t, tstar;  // per vertex, per edge, per edge
  WeightedSpace space;

  /// T_mu, with P_v for a vertex.
  Mat<T> path_operator(const Path& mu) const {
    Mat<T> out = P[mu.v];
    for (int e : mu.e) out = Mat<T>(out * t[e]);
    return out;
  }
  Mat<T> path_operator_star(const Path& mu) const {
    Mat<T> out = P[mu.v];
    for (int e : mu.e) out = Mat<T>(tstar[e] * out);
    return out;
  }
  /// T_mu T_nu^*, zero for the zero element.
  Mat<T> pair_operator(const PathPair& a) const {
    const auto n = static_cast<Eigen::Index>(space.size());
    if (a.zero) return zero_matrix<T>(n, n);
    return Mat<T>(path_operator(a.mu) * path_operator_star(a.nu));
  }
};

/// P_v = 1_{Z(v)} and T_e the spatial partial isometry x -> e x from Z(s(e))
/// onto Z(e), on l^p of the boundary paths with counting measure.
template <Scalar T>
QFamily<T> spatial_q_family(std::shared_ptr<const Graph> q, const Exponent& p) {
  if (!q->acyclic) throw UnsupportedError("spatial_q_family: the boundary path space of a cyclic graph is infinite");
  const BoundaryPaths bd = boundary_paths(*q);
  const int n = static_cast<int>(bd.points.size());
  QFamily<T> out{q, {}, {}, {}, WeightedSpace::counting(n, p)};
  for (int v = 0; v < q->vertices; ++v) {
    std::vector<int> subset;
    for (int x = 0; x < n; ++x)
      if (bd.points[x].v == v) subset.push_back(x);
    out.P.push_back(spi_matrix(spi_idempotent<T>(out.space, subset)));
  }
  for (int e = 0; e < q->edges(); ++e) {
    std::vector<int> img(n, -1);
    const Path pe = edge_path(*q, e);
    for (int x = 0; x < n; ++x)
      if (bd.points[x].v == q->source[e]) img[x] = bd.index.at(concat(*q, pe, bd.points[x]));
    auto t = make_spi<T>(out.space, PartialBijection(img), std::vector<T>(n, T(1)));
    out.t.push_back(spi_matrix(t));
    out.tstar.push_back(spi_matrix(spi_star(t)));
  }
  return out;
}

/// P^F_mu = product over mu mu' in F, mu' nonempty, of (T_mu T_mu^* - T_{mu mu'} T_{mu mu'}^*).
template <Scalar T>
struct WebsterFamily {
  std::vector<Path> paths;
  std::vector<Mat<T>> P;
  bool orthogonal = true;
  bool reconstructs = true;  // T_mu T_mu^* = sum of P^F_nu over nu in F extending mu
};

template <Scalar T>
WebsterFamily<T> webster_idempotents(const QFamily<T>& fam, const std::vector<Path>& F) {
  const Graph& q = *fam.graph;
  const auto n = static_cast<Eigen::Index>(fam.space.size());
  WebsterFamily<T> out{F, {}, true, true};
  auto range_proj = [&](const Path& mu) { return Mat<T>(fam.path_operator(mu) * fam.path_operator_star(mu)); };
  for (const auto& mu : F) {
    const Mat<T> base = range_proj(mu);
    Mat<T> acc = base;
    for (const auto& other : F) {
      auto rest = strip_prefix(q, mu, other);
      if (!rest || rest->length() == 0) continue;
      acc = Mat<T>(acc * Mat<T>(base - range_proj(other)));
    }
    out.P.push_back(std::move(acc));
  }
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t j = 0; j < F.size(); ++j) {
      const Mat<T> prod = out.P[i] * out.P[j];
      if (!nearly_equal(prod, i == j ? out.P[i] : zero_matrix<T>(n, n))) out.orthogonal = false;
    }
  for (std::size_t i = 0; i < F.size(); ++i) {
    Mat<T> sum = zero_matrix<T>(n, n);
    for (std::size_t j = 0; j < F.size(); ++j)
      if (strip_prefix(q, F[i], F[j])) sum += out.P[j];
    if (!nearly_equal(sum, range_proj(F[i]))) out.reconstructs = false;
  }
  return out;
}

struct QFamilyOptions {
  int webster_max_length = 2;
  int webster_max_subset = 3;
  std::size_t webster_limit = 400;
  std::uint64_t seed = 7;
};

struct QFamilyReport {
  TwistedActionReport checks;  // CK1, CK2, orthogonality, contractivity, webster
  std::size_t webster_families = 0;
  std::size_t inconclusive = 0;
  bool truncated = false;
  bool ok() const { return checks.ok(); }
};

/// The algebraic relations, exact for exact scalars.
template <Scalar T>
void check_q_relations(const QFamily<T>& fam, AxiomCheck& ck1, AxiomCheck& ck2, AxiomCheck& orth) {
  const Graph& q = *fam.graph;
  const auto n = static_cast<Eigen::Index>(fam.space.size());
  const Mat<T> zero = zero_matrix<T>(n, n);
  if (static_cast<int>(fam.P.size()) != q.vertices || static_cast<int>(fam.t.size()) != q.edges() ||
      static_cast<int>(fam.tstar.size()) != q.edges()) {
    orth.fail("operator counts differ from the graph");
    return;
  }
  for (int v = 0; v < q.vertices; ++v)
    for (int w = 0; w < q.vertices; ++w) {
      const Mat<T> prod = fam.P[v] * fam.P[w];
      if (!nearly_equal(prod, v == w ? fam.P[v] : zero))
        orth.fail(v == w ? "P_" + q.vertex_names[v] + " is not idempotent"
                         : "P_" + q.vertex_names[v] + " P_" + q.vertex_names[w] + " != 0");
    }
  for (int e = 0; e < q.edges(); ++e) {
    const auto& t = fam.t[e];
    const auto& ts = fam.tstar[e];
    const auto& name = q.edge_names[e];
    if (!nearly_equal(Mat<T>(ts * t), fam.P[q.source[e]])) ck1.fail("T_" + name + "^* T_" + name + " != P_s(" + name + ")");
    if (!nearly_equal(Mat<T>(t * ts * t), t) || !nearly_equal(Mat<T>(ts * t * ts), ts))
      ck1.fail("T_" + name + "^* is not a generalized inverse of T_" + name);
    const Mat<T> range = t * ts;
    const auto& pr = fam.P[q.range[e]];
    if (!nearly_equal(Mat<T>(pr * range), range) || !nearly_equal(Mat<T>(range * pr), range))
      ck1.fail("T_" + name + " T_" + name + "^* is not below P_r(" + name + ")");
  }
  for (int v = 0; v < q.vertices; ++v) {
    if (!q.regular[v]) continue;
    Mat<T> sum = zero;
    for (int e : q.edges_into[v]) sum += Mat<T>(fam.t[e] * fam.tstar[e]);
    if (!nearly_equal(sum, fam.P[v])) ck2.fail("P_" + q.vertex_names[v] + " != sum of T_e T_e^* over r(e) = v");
  }
}

template <Scalar T>
QFamilyReport q_family_validate(const QFamily<T>& fam, FieldMode mode, const QFamilyOptions& options = {}) {
  const Graph& q = *fam.graph;
  AxiomCheck ck1{"CK1"}, ck2{"CK2"}, orth{"orthogonality"}, contr{"contractivity"}, web{"webster"};
  check_q_relations(fam, ck1, ck2, orth);
  QFamilyReport out;
  if (!orth.passed && fam.P.size() != static_cast<std::size_t>(q.vertices)) {
    out.checks = {{ck1, ck2, orth, contr, web}};
    return out;
  }
  auto norm_check = [&](const Mat<T>& m, const std::string& name) {
    NormBracket b = opnorm_any(conjugated_complex(m, fam.space), fam.space.p);
    if (b.lower > 1 + 1e-9) contr.fail("||" + name + "||_p = " + to_string(b.lower) + " > 1");
    else if (b.upper > 1 + 1e-9) ++out.inconclusive;
  };
  for (int v = 0; v < q.vertices; ++v) norm_check(fam.P[v], "P_" + q.vertex_names[v]);
  for (int e = 0; e < q.edges(); ++e) {
    norm_check(fam.t[e], "T_" + q.edge_names[e]);
    norm_check(fam.tstar[e], "T_" + q.edge_names[e] + "^*");
  }
  const std::vector<Path> paths = all_paths(q, options.webster_max_length);
  const int k = static_cast<int>(paths.size());
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (!pick.empty()) {
      if (out.webster_families >= options.webster_limit) {
        out.truncated = true;
        return;
      }
      std::vector<Path> F;
      for (int i : pick) F.push_back(paths[i]);
      auto wf = webster_idempotents(fam, F);
      ++out.webster_families;
      auto name = [&] {
        std::string s = "{";
        for (std::size_t i = 0; i < F.size(); ++i) s += (i ? "," : "") + path_name(q, F[i]);
        return s + "}";
      };
      if (!wf.orthogonal || !wf.reconstructs) {
        web.fail("F = " + name() + ": the Webster idempotents are not orthogonal or do not reconstruct");
      } else {
        auto r = jointly_contractive_check(wf.P, fam.space, mode, options.seed);
        if (r.verdict == Verdict::Fail || r.verdict == Verdict::ApproxFail)
          web.fail("F = " + name() + ": ||sum a_mu P^F_mu||_p = " + to_string(r.worst) + " > 1");
        else if (r.verdict == Verdict::Inconclusive)
          ++out.inconclusive;
      }
    }
    if (static_cast<int>(pick.size()) == options.webster_max_subset) return;
    for (int i = start; i < k && !out.truncated; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  out.checks = {{ck1, ck2, orth, contr, web}};
  return out;
}

/// psi_{(P,T)}(x) = sum c T_mu T_nu^*; the family must satisfy CK1, CK2 and orthogonality.
template <Scalar T>
Mat<T> evaluate_q_family(const LPAElement<T>& x, const QFamily<T>& fam) {
  if (x.graph_ptr() != fam.graph) throw DomainError("evaluate_q_family: the element lives over another graph");
  AxiomCheck ck1{"CK1"}, ck2{"CK2"}, orth{"orthogonality"};
  check_q_relations(fam, ck1, ck2, orth);
  for (const auto* c : {&ck1, &ck2, &orth})
    if (!c->passed) throw AxiomError("evaluate_q_family: invalid Q-family, " + c->name + ": " + c->witness);
  const auto n = static_cast<Eigen::Index>(fam.space.size());
  Mat<T> out = zero_matrix<T>(n, n);
  for (const auto& [a, c] : x.terms()) out += Mat<T>(c * fam.pair_operator(a));
  return out;
}

/// V(mu, nu) = T_mu T_nu^* on every element of S_Q.
template <Scalar T>
std::vector<Mat<T>> q_family_semigroup_rep(const QFamily<T>& fam, const GraphSemigroup& s) {
  std::vector<Mat<T>> out;
  for (const auto& a : s.elements) out.push_back(fam.pair_operator(a));
  return out;
}

}  // namespace lpg

#endif  // LPGROUPOID_GRAPHALG_HPP
