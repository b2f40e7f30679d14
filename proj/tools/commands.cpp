#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace lpg::cli {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "twist", "rep", "tight", "ck", "norms", "crossed"};
  return names;
}

std::vector<std::string> applicable_suites(ModelKind k) {
  switch (k) {
    case ModelKind::Groupoid: return {"axioms", "twist", "rep", "tight", "norms"};
    case ModelKind::Graph: return {"axioms", "ck", "tight", "twist", "rep", "norms"};
    case ModelKind::Semigroup: return {"axioms", "tight", "twist"};
    case ModelKind::Action: return {"axioms", "twist", "rep", "norms"};
    case ModelKind::PartialAction: return {"axioms", "twist", "rep", "norms", "crossed"};
  }
  return {};
}

std::vector<Exponent> parse_exponents(const std::string& list) {
  std::vector<Exponent> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Exponent::parse(item));
    } catch (const std::exception& e) {
      throw UsageError(std::string("--p: ") + e.what());
    }
  }
  if (out.empty()) throw UsageError("--p: empty exponent list");
  return out;
}

namespace {

std::string model_name(const ModelFile& m) { return std::filesystem::path(m.path).filename().string(); }

std::uint64_t seed_of(const ModelFile& m, const Options& o) {
  return o.seed ? *o.seed : m.seed ? *m.seed : kDefaultSeed;
}

std::mt19937_64 task_rng(const ModelFile& m, const Options& o, std::size_t model_index, const std::string& suite) {
  const std::uint64_t s = seed_of(m, o);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(model_index),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(suite) & 0xffffffffu)};
  return std::mt19937_64(seq);
}

FieldMode mode_of(const ModelFile& m, const Options& o) {
  return o.mode ? *o.mode : m.mode ? *m.mode : FieldMode::Real;
}

std::vector<Exponent> exponents(const Options& o, bool norm_command) {
  if (!o.p.empty()) return o.p;
  if (norm_command) return {Exponent(1), Exponent(Rational(3, 2)), Exponent(2), Exponent(3), Exponent::infinity()};
  return {Exponent(1), Exponent(2), Exponent::infinity()};
}

int uniform(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

template <Scalar T>
T random_scalar(std::mt19937_64& g) {
  T out = T(Rational(uniform(g, -3, 3), uniform(g, 1, 3)));
  if constexpr (std::is_same_v<T, GaussRational>) out.im = Rational(uniform(g, -3, 3), uniform(g, 1, 3));
  return out;
}

std::string bool_witness(bool ok, const std::string& w) { return ok ? std::string() : w; }

struct Sink {
  Report& report;
  const ModelFile& model;
  std::string suite;

  Entry& put(const std::string& check, const std::string& verdict, const std::string& witness = {},
             json detail = json::object()) {
    report.add({model_name(model), suite, check, verdict, witness, std::move(detail)});
    return report.entries.back();
  }
  Entry& check(const std::string& name, bool ok, const std::string& witness = {}, json detail = json::object()) {
    return put(name, ok ? "PASS" : "FAIL", bool_witness(ok, witness), std::move(detail));
  }
  void axioms(const TwistedActionReport& r, const std::string& prefix = {}) {
    for (const auto& c : r.checks) check(prefix + c.name, c.passed, c.witness);
  }
};

/// Every nonempty bisection, by backtracking over arrows.
std::vector<Bisection> all_bisections(const FiniteGroupoid& G, std::size_t limit = 4096) {
  std::vector<Bisection> out;
  std::vector<char> used_r(G.size(), 0), used_d(G.size(), 0);
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int a) {
    if (a == G.size()) {
      if (!pick.empty()) {
        if (out.size() >= limit) throw UsageError("--semigroup all: more than " + std::to_string(limit) + " bisections");
        out.push_back(make_bisection(G, pick));
      }
      return;
    }
    rec(a + 1);
    if (used_r[G.r(a)] || used_d[G.d(a)]) return;
    used_r[G.r(a)] = used_d[G.d(a)] = 1;
    pick.push_back(a);
    rec(a + 1);
    pick.pop_back();
    used_r[G.r(a)] = used_d[G.d(a)] = 0;
  };
  rec(0);
  return out;
}

std::vector<Bisection> singletons(const FiniteGroupoid& G) {
  std::vector<Bisection> out;
  for (int a = 0; a < G.size(); ++a) out.push_back(make_bisection(G, {a}));
  return out;
}

/// A twisted groupoid built from a model, with the default bisection generators of its kind.
template <Scalar T>
struct Twisted {
  std::shared_ptr<const Cocycle<T>> sigma;
  std::vector<Bisection> defaults;
  std::string default_name;
  std::optional<GraphGroupoid> graph;
  std::shared_ptr<const PartialTwist<T>> partial;
  std::optional<TwistedPartialGroupoid<T>> partial_groupoid;
  std::optional<TwistedActionData<T>> action;

  const FiniteGroupoid& groupoid() const { return sigma->groupoid(); }
};

template <Scalar T>
Twisted<T> twisted_of(const ModelFile& m) {
  Twisted<T> out;
  switch (m.kind) {
    case ModelKind::Groupoid: {
      auto G = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::validate(m.tables));
      out.sigma = build_cocycle<T>(m, G);
      if (!m.bisections.empty()) {
        for (const auto& b : m.bisections) out.defaults.push_back(make_bisection(*G, b));
        out.default_name = "model";
      } else if (G->size() <= 16) {
        out.defaults = all_bisections(*G);
        out.default_name = "all";
      } else {
        out.defaults = singletons(*G);
        out.default_name = "singletons";
      }
      break;
    }
    case ModelKind::Graph: {
      auto q = build_graph(m);
      if (!q->acyclic) throw UnsupportedError("the graph groupoid of a cyclic graph is infinite");
      out.graph = graph_groupoid(q);
      out.sigma = std::make_shared<const Cocycle<T>>(trivial_cocycle<T>(out.graph->groupoid));
      for (int v = 0; v < q->vertices; ++v) out.defaults.push_back(out.graph->cylinder({false, vertex_path(v), vertex_path(v)}));
      for (int e = 0; e < q->edges(); ++e)
        out.defaults.push_back(out.graph->cylinder({false, edge_path(*q, e), vertex_path(q->source[e])}));
      out.defaults.erase(std::remove_if(out.defaults.begin(), out.defaults.end(),
                                        [](const Bisection& b) { return b.arrows.empty(); }),
                         out.defaults.end());
      out.default_name = "cylinders";
      break;
    }
    case ModelKind::PartialAction: {
      out.partial = build_partial_twist<T>(m);
      out.partial_groupoid = partial_action_groupoid(*out.partial);
      out.sigma = out.partial_groupoid->sigma;
      out.defaults = out.partial_groupoid->groupoid.slices;
      out.default_name = "slices";
      break;
    }
    case ModelKind::Action: {
      out.action = build_action<T>(m);
      auto rebuilt = rebuild_twisted_groupoid(*out.action);
      out.sigma = std::make_shared<const Cocycle<T>>(rebuilt.sigma);
      out.defaults = rebuilt.transformation.slices;
      out.default_name = "slices";
      break;
    }
    case ModelKind::Semigroup:
      throw UnsupportedError("a semigroup model carries no groupoid");
  }
  return out;
}

template <Scalar T>
std::vector<Bisection> generators(const Twisted<T>& tw, const std::string& spec) {
  const auto& G = tw.groupoid();
  if (spec.empty() || spec == "default" || spec == tw.default_name) return tw.defaults;
  if (spec == "singletons") return singletons(G);
  if (spec == "all") return all_bisections(G);
  // "0,1;2,3": explicit arrow lists
  std::vector<Bisection> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::vector<int> arrows;
    std::stringstream ps(part);
    std::string a;
    while (std::getline(ps, a, ',')) {
      try {
        std::size_t used = 0;
        const int k = std::stoi(a, &used);
        if (used != a.size() || k < 0 || k >= G.size()) throw std::out_of_range(a);
        arrows.push_back(k);
      } catch (const std::exception&) {
        throw UsageError("--semigroup: expected singletons, all, default or arrow lists like 0,1;2, got " + spec);
      }
    }
    if (!is_bisection(G, arrows)) throw UsageError("--semigroup: {" + part + "} is not a bisection");
    out.push_back(make_bisection(G, arrows));
  }
  if (out.empty()) throw UsageError("--semigroup: no generators given");
  return out;
}

std::string exponent_label(const Exponent& p) { return p.str(); }

template <Scalar T>
bool same_matrices(const std::vector<Mat<T>>& a, const std::vector<Mat<T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nearly_equal(a[i], b[i])) return false;
  return true;
}

// ---------------------------------------------------------------- axioms

template <Scalar T>
void suite_axioms(Sink& out, const ModelFile& m) {
  auto guarded = [&](const std::string& name, auto&& f) {
    try {
      json d = f();
      out.put(name, "PASS", {}, std::move(d));
      return true;
    } catch (const AxiomError& e) {
      out.put(name, "FAIL", e.what());
    } catch (const DomainError& e) {
      out.put(name, "FAIL", e.what());
    }
    return false;
  };
  switch (m.kind) {
    case ModelKind::Groupoid: {
      std::shared_ptr<const FiniteGroupoid> G;
      if (!guarded("groupoid", [&] {
            G = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::validate(m.tables));
            return json{{"arrows", G->size()}, {"units", G->unit_count()}};
          }))
        return;
      guarded("A-cocycle", [&] {
        auto s = build_cocycle<T>(m, G);
        return json{{"trivial", s->trivial()}};
      });
      break;
    }
    case ModelKind::Graph:
      guarded("graph", [&] {
        auto q = build_graph(m);
        json regular = json::array(), singular = json::array();
        for (int v = 0; v < q->vertices; ++v) (q->regular[v] ? regular : singular).push_back(q->vertex_names[v]);
        return json{{"vertices", q->vertices}, {"edges", q->edges()}, {"acyclic", q->acyclic},
                    {"regular", regular}, {"singular", singular}};
      });
      break;
    case ModelKind::Semigroup:
      guarded("inverse semigroup", [&] {
        auto S = build_semigroup(m.semigroup);
        return json{{"elements", S.size()}, {"idempotents", S.idempotents().size()}};
      });
      break;
    case ModelKind::Action:
      if (!guarded("inverse semigroup", [&] { return json{{"elements", build_semigroup(m.semigroup).size()}}; }))
        return;
      guarded("action", [&] {
        auto data = build_action<T>(m);
        return json{{"points", data.points()}};
      });
      break;
    case ModelKind::PartialAction: {
      if (!guarded("partial action", [&] {
            std::vector<PartialBijection> theta;
            for (const auto& row : m.maps) theta.emplace_back(row);
            auto A = validate_partial_action(build_group(m.group), m.points, theta);
            return json{{"group", A.group.size()}, {"points", A.points}};
          }))
        return;
      guarded("partial twist", [&] {
        build_partial_twist<T>(m);
        return json::object();
      });
      break;
    }
  }
}

// ---------------------------------------------------------------- twist

template <Scalar T>
void twist_round_trip(Sink& out, const Twisted<T>& tw, const std::vector<Bisection>& gens, const std::string& prefix) {
  const auto& G = tw.groupoid();
  BisectionSemigroup S = bisection_semigroup(G, gens);
  if (!out.check(prefix + "S wide", S.wide(), "the bisection semigroup does not cover G or is not closed under unions",
                 json{{"bisections", S.elements.size()}})
           .verdict.starts_with("P"))
    return;
  TwistedActionData<T> data;
  try {
    data = extract_twisted_action(tw.sigma, S, constant_sections<T>(G, S));
  } catch (const std::exception& e) {
    out.put(prefix + "extract", "FAIL", e.what());
    return;
  }
  out.axioms(validate_twisted_action(data), prefix);
  auto cmp = rebuild_and_compare(data, *tw.sigma);
  const char* v = cmp.status == SearchStatus::Found ? "PASS" : cmp.status == SearchStatus::None ? "FAIL" : "INCONCLUSIVE";
  out.put(prefix + "rebuild", v, cmp.mismatch, json{{"nodes", cmp.nodes}, {"arrows", G.size()}});
}

template <Scalar T>
void suite_twist(Sink& out, const ModelFile& m, const Options& o) {
  if (m.kind == ModelKind::Semigroup) {
    ISemigroup S = build_semigroup(m.semigroup);
    SpectralAction sa = spectral_action(S, true);
    auto data = untwisted<T>(validate_action(S, static_cast<int>(sa.characters.size()), sa.maps));
    out.axioms(validate_twisted_action(data), "tight spectrum ");
    auto rebuilt = rebuild_twisted_groupoid(data);
    out.put("groupoid of germs", "PASS", {},
            json{{"arrows", rebuilt.groupoid->size()}, {"units", rebuilt.groupoid->unit_count()}});
    return;
  }
  auto tw = twisted_of<T>(m);
  if (tw.action) out.axioms(validate_twisted_action(*tw.action), "model ");
  twist_round_trip(out, tw, generators(tw, o.semigroup), "");
  if (tw.partial) {
    ExelSemigroup ex = exel_semigroup(tw.partial->action->group);
    auto data = exel_twisted_action(ex, *tw.partial);
    out.axioms(validate_twisted_action(data), "S(G) ");
    auto cmp = rebuild_and_compare(data, *tw.sigma);
    const char* v = cmp.status == SearchStatus::Found ? "PASS" : cmp.status == SearchStatus::None ? "FAIL" : "INCONCLUSIVE";
    out.put("S(G) rebuild", v, cmp.mismatch, json{{"elements", ex.elements.size()}});
  }
}

// ---------------------------------------------------------------- rep

template <Scalar T>
LPAElement<T> random_lpa(std::mt19937_64& g, const std::shared_ptr<const Graph>& q, int terms) {
  const auto paths = all_paths(*q);
  LPAElement<T> out(q);
  for (int k = 0; k < terms; ++k) {
    const auto& mu = paths[uniform(g, 0, static_cast<int>(paths.size()) - 1)];
    std::vector<Path> partners;
    for (const auto& nu : paths)
      if (path_source(*q, nu) == path_source(*q, mu)) partners.push_back(nu);
    out.add(make_pair_element(*q, mu, partners[uniform(g, 0, static_cast<int>(partners.size()) - 1)]),
            random_scalar<T>(g));
  }
  return out;
}

template <Scalar T>
void suite_rep(Sink& out, const ModelFile& m, const Options& o, std::mt19937_64& rng) {
  auto tw = twisted_of<T>(m);
  const auto& G = tw.groupoid();
  BisectionSemigroup S = bisection_semigroup(G, generators(tw, o.semigroup));
  std::shared_ptr<const TwistedGroupoidModel<T>> model;
  try {
    model = make_model(tw.sigma, S);
  } catch (const std::exception& e) {
    out.put("model", "FAIL", e.what());
    return;
  }
  std::vector<Mat<T>> lambda;
  for (int a = 0; a < G.size(); ++a) lambda.push_back(regular_representation(AlgElement<T>::delta(tw.sigma, a)));
  for (const auto& p : exponents(o, false)) {
    const std::string tag = " p=" + exponent_label(p);
    auto rep = regular_covariant_rep(model, p);
    auto rc = validate_covariant(rep);
    std::string w;
    for (const auto& c : rc.checks)
      if (!c.passed && w.empty()) w = c.name + ": " + c.witness;
    out.check("covariant" + tag, rc.ok(), w, json{{"dimension", rep.space.size()}, {"bisections", S.elements.size()}});
    try {
      auto back = integrate(rep);
      out.check("integrate" + tag, same_matrices(back.basis, lambda), "pi x v differs from the regular representation");
      auto again = disintegrate(back);
      out.check("disintegrate" + tag, same_matrices(again.pi, rep.pi) && same_matrices(again.v, rep.v),
                "disintegrate(integrate(pi, v)) differs from (pi, v)");
    } catch (const std::exception& e) {
      out.put("integrate" + tag, "FAIL", e.what());
    }
  }
  if (tw.graph) {
    const auto& GG = *tw.graph;
    const auto q = GG.graph;
    std::vector<Mat<T>> boundary;
    const auto n = static_cast<Eigen::Index>(GG.boundary.points.size());
    boundary.assign(GG.groupoid->size(), zero_matrix<T>(n, n));
    for (const auto& [yx, a] : GG.arrow) boundary[a](yx.first, yx.second) = T(1);
    for (const auto& p : exponents(o, false)) {
      const std::string tag = " p=" + exponent_label(p);
      auto fam = spatial_q_family<T>(q, p);
      bool ok = true;
      std::string w;
      for (int k = 0; k < 6 && ok; ++k) {
        auto x = random_lpa<T>(rng, q, 3);
        auto h = lpa_to_groupoid_algebra(x, GG, tw.sigma);
        Mat<T> via = zero_matrix<T>(n, n);
        for (int a = 0; a < h.size(); ++a)
          if (!is_zero(h[a])) via += h[a] * boundary[a];
        ok = nearly_equal(via, evaluate_q_family(x, fam));
        if (!ok) w = "psi_(P,T)(x) differs from the boundary representation of Psi(x)";
      }
      out.check("Q-family vs groupoid" + tag, ok, w);
      auto rep = disintegrate(model, WeightedSpace::counting(n, p), boundary);
      auto back = integrate(rep);
      out.check("boundary round trip" + tag, validate_covariant(rep).ok() && same_matrices(back.basis, boundary),
                "integrate(disintegrate(psi)) differs from psi");
    }
  }
}

// ---------------------------------------------------------------- norms

std::string exact_or_double(const Rational& x) { return to_string(x); }
std::string exact_or_double(double x) { return format_double(x); }

template <Scalar T>
void norm_rows(Sink& out, const AlgElement<T>& f, const std::string& name, const std::vector<Exponent>& ps,
               const std::vector<Bisection>& family) {
  const auto d = norm(f, NormKind::DStar), r = norm(f, NormKind::RStar), in = norm(f, NormKind::INorm),
             sup = norm(f, NormKind::Sup);
  const double dd = to_double(d), rr = to_double(r);
  std::optional<ProjectiveNorm> proj;
  std::string proj_text = "n/a", proj_status;
  if constexpr (std::is_same_v<T, Rational>) {
    try {
      proj = norm_projective(f, family);
      proj_text = to_string(proj->value);
    } catch (const DomainError& e) {
      proj_text = "infeasible";
      proj_status = "INFEASIBLE";
    }
  }
  const Mat<T> L = regular_representation(f);
  bool all_ok = true;
  std::string witness;
  for (const auto& p : ps) {
    NormBracket b = opnorm_any(to_complex_matrix(L), p);
    double interp;
    if (p.is_infinite()) interp = rr;
    else if (p == Exponent(1)) interp = dd;
    else {
      const double pp = p.to_double();
      interp = std::pow(dd, 1 / pp) * std::pow(rr, 1 - 1 / pp);
    }
    auto le = [](double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::abs(b)); };
    std::string bad;
    if (!le(to_double(sup), b.upper)) bad = "||f||_inf > ||Lambda_p(f)||";
    else if (!le(b.lower, interp)) bad = "||Lambda_p(f)|| > ||f||_d*^(1/p) ||f||_r*^(1/q)";
    else if (!le(interp, to_double(in))) bad = "||f||_d*^(1/p) ||f||_r*^(1/q) > ||f||_I";
    else if constexpr (std::is_same_v<T, Rational>) {
      if (proj && !(in <= proj->value)) bad = "||f||_I > projective norm";
    }
    if (!bad.empty() && all_ok) {
      all_ok = false;
      witness = "p=" + p.str() + ": " + bad;
    }
    NormRow row{model_name(out.model), name, p.str(), b.lower,
                b.upper, interp, exact_or_double(in), proj_text,
                !bad.empty() ? "HIERARCHY-FAIL" : !proj_status.empty() ? proj_status : "ok"};
    out.report.norms.push_back(std::move(row));
  }
  out.check("hierarchy " + name, all_ok, witness);
}

template <Scalar T>
std::vector<std::pair<std::string, AlgElement<T>>> norm_elements(const Twisted<T>& tw, const ModelFile& m,
                                                                 const std::string& spec, std::mt19937_64& rng) {
  const auto& G = tw.groupoid();
  std::vector<std::pair<std::string, AlgElement<T>>> out;
  auto ones = [&] {
    AlgElement<T> f(tw.sigma);
    for (int a = 0; a < G.size(); ++a) f[a] = T(1);
    return f;
  };
  auto randoms = [&](int k) {
    for (int i = 0; i < k; ++i) {
      AlgElement<T> f(tw.sigma);
      for (int a = 0; a < G.size(); ++a)
        if (uniform(rng, 0, 1)) f[a] = random_scalar<T>(rng);
      out.emplace_back("random#" + std::to_string(i), std::move(f));
    }
  };
  auto arrow = [&](const std::string& text) {
    for (int a = 0; a < G.size(); ++a)
      if (G.label(a) == text) return a;
    try {
      std::size_t used = 0;
      const int a = std::stoi(text, &used);
      if (used == text.size() && a >= 0 && a < G.size()) return a;
    } catch (const std::exception&) {
    }
    throw UsageError("--element: no arrow " + text);
  };
  if (spec.empty() && m.kind == ModelKind::Groupoid && !m.element.empty()) return norm_elements(tw, m, "model", rng);
  if (spec.empty() || spec == "default") {
    out.emplace_back("ones", ones());
    for (int a = 0, taken = 0; a < G.size() && taken < 2; ++a)
      if (!G.is_unit(a)) {
        out.emplace_back("delta(" + G.label(a) + ")", AlgElement<T>::delta(tw.sigma, a));
        ++taken;
      }
    randoms(3);
  } else if (spec == "ones") {
    out.emplace_back("ones", ones());
  } else if (spec == "model") {
    if (m.element.empty()) throw UsageError("--element model: the model has no element");
    AlgElement<T> f(tw.sigma);
    for (const auto& [a, v] : m.element) f[a] += scalar_value<T>(v);
    out.emplace_back("model", std::move(f));
  } else if (spec.starts_with("delta:")) {
    const int a = arrow(spec.substr(6));
    out.emplace_back("delta(" + G.label(a) + ")", AlgElement<T>::delta(tw.sigma, a));
  } else if (spec.starts_with("random:")) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(7));
    } catch (const std::exception&) {
    }
    if (k < 1 || k > 10000) throw UsageError("--element random:K needs 1 <= K <= 10000");
    randoms(k);
  } else {
    AlgElement<T> f(tw.sigma);
    // Arrow labels such as (1,2) contain commas; split only outside parentheses.
    std::vector<std::string> terms(1);
    int depth = 0;
    for (char c : spec) {
      depth += c == '(' ? 1 : c == ')' ? -1 : 0;
      if (c == ',' && depth == 0) terms.emplace_back();
      else terms.back() += c;
    }
    for (const auto& term : terms) {
      const auto colon = term.rfind(':');
      if (colon == std::string::npos) throw UsageError("--element: expected arrow:value terms, got " + term);
      ScalarText v;
      v.re = term.substr(colon + 1);
      v.where = "--element";
      try {
        f[arrow(term.substr(0, colon))] += scalar_value<T>(v);
      } catch (const DomainError& e) {
        throw UsageError(std::string("--element: ") + e.what());
      }
    }
    out.emplace_back(spec, std::move(f));
  }
  return out;
}

template <Scalar T>
void suite_norms(Sink& out, const ModelFile& m, const Options& o, std::mt19937_64& rng, bool norm_command) {
  auto tw = twisted_of<T>(m);
  BisectionSemigroup S = bisection_semigroup(tw.groupoid(), generators(tw, o.semigroup));
  std::vector<Bisection> family;
  for (const auto& b : S.elements)
    if (!b.arrows.empty()) family.push_back(b);
  for (const auto& [name, f] : norm_elements(tw, m, norm_command ? o.element : std::string(), rng))
    norm_rows(out, f, name, exponents(o, norm_command), family);
}

// ---------------------------------------------------------------- tight

template <Scalar T>
void suite_tight(Sink& out, const ModelFile& m, const Options& o) {
  if (m.kind == ModelKind::Semigroup) {
    ISemigroup S = build_semigroup(m.semigroup);
    const auto& E = S.semilattice();
    auto chars = tight_characters(E, E.size() + 1);
    json detail = {{"idempotents", E.size()}, {"tight_characters", chars.size()}};
    if (E.size() > 14) {
      out.put("tight characters", "SKIP", "cover enumeration limited to 14 idempotents", detail);
      return;
    }
    bool ok = true;
    std::string w;
    for (const auto& f : enumerate_filters(E, E.size() + 1)) {
      const bool tight = is_tight_character(E, character_of(E, f));
      if (tight != f.ultra && ok) {
        ok = false;
        w = "filter generated by " + S.label(S.idempotents()[f.generator]) + (f.ultra ? " is ultra but not tight" : " is tight but not ultra");
      }
    }
    out.check("tight = ultrafilter", ok, w, detail);
    return;
  }
  if (m.kind == ModelKind::Graph) {
    auto q = build_graph(m);
    if (!q->acyclic) {
      out.put("boundary bijection", "SKIP", "the boundary of a cyclic graph is infinite");
      return;
    }
    auto E = graph_idempotent_semilattice(*q);
    auto bd = boundary_paths(*q);
    auto chars = tight_characters(E.lattice, E.paths.size() + 1);
    std::set<std::vector<char>> tight;
    for (const auto& c : chars) tight.insert(c.values);
    std::set<std::vector<char>> paired;
    json names = json::array();
    for (const auto& x : bd.points) {
      std::vector<char> phi(E.paths.size() + 1, 0);
      for (std::size_t i = 0; i < E.paths.size(); ++i) phi[i] = strip_prefix(*q, E.paths[i], x) ? 1 : 0;
      paired.insert(phi);
      names.push_back(path_name(*q, x));
    }
    out.check("boundary bijection", tight == paired,
              std::to_string(chars.size()) + " tight characters, " + std::to_string(bd.points.size()) + " boundary paths",
              json{{"tight_characters", chars.size()}, {"boundary", names}});
    auto S = graph_inverse_semigroup(q);
    if (S.elements.size() > 80) {
      out.put("tight representation", "SKIP", "S_Q has more than 80 elements");
      return;
    }
    auto fam = spatial_q_family<T>(q, Exponent(2));
    auto t = is_tight_rep(S.semigroup, q_family_semigroup_rep(fam, S));
    out.check("tight representation", t.tight && (!t.oracle_run || t.oracle_agrees), t.witness);
    return;
  }
  auto tw = twisted_of<T>(m);
  const auto& G = tw.groupoid();
  BisectionSemigroup S = bisection_semigroup(G, generators(tw, o.semigroup));
  const auto& idem = S.semigroup.idempotents();
  std::set<std::vector<char>> predicted;
  for (int u : G.units()) {
    std::vector<char> phi(idem.size(), 0);
    for (std::size_t i = 0; i < idem.size(); ++i) phi[i] = S.elements[idem[i]].contains(u) ? 1 : 0;
    predicted.insert(phi);
  }
  std::size_t singles = 0;
  for (int e : idem) singles += S.elements[e].arrows.size() == 1;
  if (singles < static_cast<std::size_t>(G.unit_count())) {
    out.put("tight spectrum", "SKIP", "E(S) does not contain every unit singleton");
    return;
  }
  const auto& E = S.semigroup.semilattice();
  auto chars = tight_characters(E, E.size() + 1);
  std::set<std::vector<char>> got;
  for (const auto& c : chars) got.insert(c.values);
  out.check("tight spectrum", got == predicted,
            std::to_string(chars.size()) + " tight characters, " + std::to_string(G.unit_count()) + " units",
            json{{"tight_characters", chars.size()}, {"units", G.unit_count()}});
}

// ---------------------------------------------------------------- ck

template <Scalar T>
void suite_ck(Sink& out, const ModelFile& m, const Options& o) {
  auto q = build_graph(m);
  bool ck1 = true, ck2 = true;
  std::string w1, w2;
  for (int e = 0; e < q->edges(); ++e)
    for (int f = 0; f < q->edges(); ++f) {
      auto prod = lpa_multiply(LPAElement<T>::edge_star(q, e), LPAElement<T>::edge(q, f));
      auto want = e == f ? LPAElement<T>::vertex(q, q->source[e]) : LPAElement<T>(q);
      prod -= want;
      if (!is_zero(prod) && ck1) {
        ck1 = false;
        w1 = q->edge_names[e] + "* " + q->edge_names[f];
      }
    }
  for (int v = 0; v < q->vertices; ++v) {
    if (!q->regular[v]) continue;
    auto x = LPAElement<T>::vertex(q, v);
    for (int e : q->edges_into[v]) x -= LPAElement<T>::term(q, edge_path(*q, e), edge_path(*q, e));
    if (!is_zero(x) && ck2) {
      ck2 = false;
      w2 = "at " + q->vertex_names[v];
    }
  }
  out.check("CK1 in L(Q)", ck1, w1);
  out.check("CK2 in L(Q)", ck2, w2);
  if (!q->acyclic) {
    out.put("spatial Q-family", "SKIP", "the boundary of a cyclic graph is infinite");
    return;
  }
  for (const auto& p : exponents(o, false)) {
    auto fam = spatial_q_family<T>(q, p);
    QFamilyOptions qo;
    qo.seed = seed_of(m, o);
    auto r = q_family_validate(fam, mode_of(m, o), qo);
    for (const auto& c : r.checks.checks) {
      json d = json::object();
      if (c.name == "webster") d = json{{"families", r.webster_families}, {"truncated", r.truncated}};
      out.check(c.name + " p=" + p.str(), c.passed, c.witness, d);
    }
    if (r.inconclusive) out.put("contractivity p=" + p.str(), "INCONCLUSIVE", std::to_string(r.inconclusive) + " brackets undecided");
  }
}

// ---------------------------------------------------------------- crossed

template <Scalar T>
void suite_crossed(Sink& out, const ModelFile& m, std::mt19937_64& rng) {
  auto tw = build_partial_twist<T>(m);
  auto G = partial_action_groupoid(*tw);
  const auto& A = *tw->action;
  auto random_crossed = [&] {
    std::vector<std::vector<T>> f(A.group.size(), std::vector<T>(A.points, T(0)));
    for (int t = 0; t < A.group.size(); ++t)
      for (int x : A[t].range())
        if (uniform(rng, 0, 1)) f[t][x] = random_scalar<T>(rng);
    return CrossedElement<T>(tw, std::move(f));
  };
  bool mult = true, inv = true, bij = true, l1 = true;
  std::string wl1;
  for (int k = 0; k < 12; ++k) {
    auto f = random_crossed(), g = random_crossed();
    auto ef = embed_into_groupoid_algebra(f, G), eg = embed_into_groupoid_algebra(g, G);
    mult = mult && nearly_equal(embed_into_groupoid_algebra(crossed_convolve(f, g), G), convolve(ef, eg));
    inv = inv && nearly_equal(embed_into_groupoid_algebra(crossed_involute(f), G), involute(ef));
    bij = bij && restrict_from_groupoid_algebra(ef, G, tw) == f;
    if constexpr (std::is_same_v<T, Rational>) {
      const auto pn = norm_projective(ef, G.groupoid.slices).value;
      if (l1 && pn != l1_norm(f)) {
        l1 = false;
        wl1 = "l1 " + to_string(l1_norm(f)) + " vs projective " + to_string(pn);
      }
    }
  }
  out.check("embedding multiplicative", mult, "f-hat * g-hat != (f * g)-hat");
  out.check("embedding involutive", inv, "(f*)-hat != (f-hat)*");
  out.check("embedding bijective", bij, "restriction does not invert the embedding");
  if constexpr (std::is_same_v<T, Rational>) out.check("l1 = projective over slices", l1, wl1);
  else out.put("l1 = projective over slices", "SKIP", "the projective norm is computed in the real mode only");
}

// ---------------------------------------------------------------- dispatch

template <Scalar T>
void check_scalars(const ModelFile& m) {
  for (const auto& [a, b, v] : m.cocycle) scalar_value<T>(v);
  for (const auto& [a, v] : m.element) scalar_value<T>(v);
  for (const auto& e : m.twist) scalar_value<T>(e.value);
}

template <Scalar T>
Report run_suite(const ModelFile& m, const Options& o, std::size_t index, const std::string& suite, bool norm_command) {
  Report r;
  Sink out{r, m, suite};
  auto rng = task_rng(m, o, index, suite);
  try {
    if (suite == "axioms") suite_axioms<T>(out, m);
    else if (suite == "twist") suite_twist<T>(out, m, o);
    else if (suite == "rep") suite_rep<T>(out, m, o, rng);
    else if (suite == "norms") suite_norms<T>(out, m, o, rng, norm_command);
    else if (suite == "tight") suite_tight<T>(out, m, o);
    else if (suite == "ck") suite_ck<T>(out, m, o);
    else if (suite == "crossed") suite_crossed<T>(out, m, rng);
  } catch (const AxiomError& e) {
    out.put(suite, "SKIP", std::string("the model fails its axioms: ") + e.what());
  } catch (const UnsupportedError& e) {
    out.put(suite, "SKIP", e.what());
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    out.put(suite, "FAIL", e.what());
  }
  return r;
}

struct Job {
  std::size_t model;
  std::string suite;
};

Report run_jobs(const std::vector<ModelFile>& models, const Options& o, const std::vector<Job>& jobs, bool norm_command) {
  for (const auto& m : models) {
    if (mode_of(m, o) == FieldMode::Real) check_scalars<Rational>(m);
    else check_scalars<GaussRational>(m);
  }
  // Usage errors surface before the pool starts: the worker threads must not throw.
  std::vector<std::string> usage(jobs.size());
  std::vector<std::function<Report()>> tasks;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    const ModelFile& m = models[job.model];
    tasks.push_back([&, i, job] {
      try {
        return mode_of(m, o) == FieldMode::Real ? run_suite<Rational>(m, o, job.model, job.suite, norm_command)
                                                : run_suite<GaussRational>(m, o, job.model, job.suite, norm_command);
      } catch (const UsageError& e) {
        usage[i] = e.what();
        return Report{};
      }
    });
  }
  Report out = run_pool(tasks, o.jobs);
  for (const auto& u : usage)
    if (!u.empty()) throw UsageError(u);
  return out;
}

json command_echo(const std::vector<ModelFile>& models, const Options& o) {
  json j = {{"command", o.command}, {"suites", o.suites}};
  json ms = json::array();
  for (const auto& m : models) ms.push_back(model_name(m));
  j["models"] = ms;
  if (o.seed) j["seed"] = *o.seed;
  json ps = json::array();
  for (const auto& p : o.p) ps.push_back(p.str());
  if (!ps.empty()) j["p"] = ps;
  if (!o.semigroup.empty()) j["semigroup"] = o.semigroup;
  if (o.mode) j["mode"] = *o.mode == FieldMode::Real ? "real" : "complex";
  if (!o.element.empty()) j["element"] = o.element;
  return j;
}

}  // namespace

Report run_verify(const std::vector<ModelFile>& models, const Options& o) {
  std::vector<Job> jobs;
  std::vector<Entry> skipped;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto ok = applicable_suites(models[i].kind);
    std::vector<std::string> wanted;
    for (const auto& s : o.suites) {
      if (s == "all") {
        wanted.insert(wanted.end(), ok.begin(), ok.end());
        continue;
      }
      if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
        throw UsageError("unknown suite " + s);
      wanted.push_back(s);
    }
    for (const auto& s : wanted) {
      if (std::find(ok.begin(), ok.end(), s) != ok.end()) jobs.push_back({i, s});
      else
        skipped.push_back({model_name(models[i]), s, s, "SKIP", std::string("not applicable to ") + kind_name(models[i].kind)});
    }
  }
  Report out = run_jobs(models, o, jobs, false);
  for (auto& e : skipped) out.add(std::move(e));
  out.command = command_echo(models, o);
  return out;
}

Report run_norm_report(const std::vector<ModelFile>& models, const Options& o) {
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].kind == ModelKind::Semigroup) throw UsageError("norm: a semigroup model carries no groupoid algebra");
    jobs.push_back({i, "norms"});
  }
  Report out = run_jobs(models, o, jobs, true);
  out.command = command_echo(models, o);
  return out;
}

Report run_command(const std::vector<ModelFile>& models, const Options& o) {
  if (o.command == "verify") return run_verify(models, o);
  if (o.command == "norm") return run_norm_report(models, o);
  Options fixed = o;
  if (o.command == "rep") {
    fixed.suites = {"rep"};
  } else if (o.command == "tight") {
    fixed.suites = {"tight"};
  } else if (o.command == "graph") {
    for (const auto& m : models)
      if (m.kind != ModelKind::Graph) throw UsageError("graph: " + model_name(m) + " is not a graph model");
    fixed.suites = {"axioms", "ck", "tight"};
  } else if (o.command == "crossprod") {
    for (const auto& m : models)
      if (m.kind != ModelKind::PartialAction)
        throw UsageError("crossprod: " + model_name(m) + " is not a partial-action model");
    fixed.suites = {"axioms", "crossed"};
  } else {
    throw UsageError("unknown command " + o.command);
  }
  for (const auto& m : models) {
    const auto ok = applicable_suites(m.kind);
    for (const auto& s : fixed.suites)
      if (std::find(ok.begin(), ok.end(), s) == ok.end())
        throw UsageError(o.command + ": " + model_name(m) + " is a " + kind_name(m.kind) + " model");
  }
  return run_verify(models, fixed);
}

}  // namespace lpg::cli
