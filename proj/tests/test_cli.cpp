#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "commands.hpp"

#include <algorithm>

using namespace lpg;
using namespace lpg::cli;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(LPG_SOURCE_DIR) + "/fixtures/" + name; }
std::string bad_fixture(const std::string& name) { return std::string(LPG_SOURCE_DIR) + "/tests/fixtures/" + name; }

Options opts(std::string command, std::vector<std::string> suites = {"all"}) {
  Options o;
  o.command = std::move(command);
  o.suites = std::move(suites);
  return o;
}

const Entry* find_entry(const Report& r, const std::string& suite, const std::string& check) {
  for (const auto& e : r.entries)
    if (e.suite == suite && e.check == check) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("model files parse into the expected structures") {
  auto pair = parse_model(fixture("pair2.json"));
  CHECK(pair.kind == ModelKind::Groupoid);
  CHECK(pair.tables.arrows == 4);
  CHECK(pair.element.size() == 4);

  auto graph = parse_model(fixture("graph_double_edge.json"));
  CHECK(graph.kind == ModelKind::Graph);
  auto q = build_graph(graph);
  CHECK(q->acyclic);
  CHECK(q->edges() == 2);
  CHECK(q->regular[0]);
  CHECK_FALSE(q->regular[1]);

  auto z3 = parse_model(fixture("z3_gauge.json"));
  REQUIRE(z3.mode);
  CHECK(*z3.mode == FieldMode::Complex);
  CHECK(scalar_value<GaussRational>(std::get<2>(z3.cocycle[1])) == GaussRational::i());
  CHECK_THROWS_AS(scalar_value<Rational>(std::get<2>(z3.cocycle[1])), SchemaError);
}

TEST_CASE("schema errors carry a location") {
  try {
    parse_model(bad_fixture("bad_edge.json"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.where() == "/edges/0/source");
  }
  CHECK_THROWS_AS(parse_model_json(json::parse(R"({"kind": "groupoid"})")), SchemaError);
  CHECK_THROWS_AS(parse_model_json(json::parse(R"({"kind": "monoid"})")), SchemaError);
  auto m = parse_model_json(json::parse(R"({"kind": "groupoid", "groupoid": {"pair": 2}, "cocycle": [[1, 1, 1]]})"));
  auto G = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::validate(m.tables));
  CHECK_THROWS_AS(build_cocycle<Rational>(m, G), SchemaError);
  CHECK_THROWS_AS(parse_model(fixture("missing.json")), SchemaError);
  try {
    parse_model_json(json::parse(R"({"kind": "graph", "vertices": 2, "edges": [{"range": 0, "source": 5}]})"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.where() == "/edges/0/source");
  }
}

TEST_CASE("every shipped fixture verifies") {
  for (const char* name : {"pair2.json", "klein_twisted.json", "z3_gauge.json", "graph_double_edge.json",
                           "partial_z2.json", "exel_z2.json", "swap_action.json"}) {
    CAPTURE(name);
    auto r = run_command({parse_model(fixture(name))}, opts("verify"));
    CHECK_FALSE(r.failed());
    CHECK(r.first_failure().empty());
    CHECK(!r.entries.empty());
  }
}

TEST_CASE("a broken cocycle fails with a witness and skips the dependent suites") {
  auto r = run_command({parse_model(bad_fixture("broken_cocycle.json"))}, opts("verify"));
  CHECK(r.failed());
  const Entry* e = find_entry(r, "axioms", "A-cocycle");
  REQUIRE(e);
  CHECK(e->verdict == "FAIL");
  CHECK(e->witness.find("sigma(1, 1)") != std::string::npos);
  CHECK(r.first_failure().find("A-cocycle") != std::string::npos);
  CHECK(find_entry(r, "twist", "twist")->verdict == "SKIP");
}

TEST_CASE("tight spectrum of the graph model matches its boundary path count") {
  auto m = parse_model(fixture("graph_double_edge.json"));
  auto r = run_command({m}, opts("tight"));
  const Entry* e = find_entry(r, "tight", "boundary bijection");
  REQUIRE(e);
  CHECK(e->verdict == "PASS");
  CHECK(e->detail["tight_characters"].get<std::size_t>() == boundary_paths(*build_graph(m)).points.size());
}

TEST_CASE("norm rows for all-ones and a point mass on M_2") {
  auto m = parse_model(fixture("pair2.json"));
  Options o = opts("norm");
  o.p = parse_exponents("1,2,inf");
  o.semigroup = "all";
  o.element = "ones";
  auto r = run_command({m}, o);
  REQUIRE(r.norms.size() == 3);
  for (const auto& row : r.norms) {
    CHECK(row.lower == doctest::Approx(2).epsilon(1e-9));
    CHECK(row.upper == doctest::Approx(2).epsilon(1e-9));
    CHECK(row.interpolated == doctest::Approx(2));
    CHECK(row.inorm == "2");
    CHECK(row.projective == "2");
  }
  // With singletons the projective norm is the l1 norm of the coefficients.
  o.semigroup = "singletons";
  r = run_command({m}, o);
  for (const auto& row : r.norms) CHECK(row.projective == "4");

  o.semigroup = "all";
  o.element = "delta:(1,2)";
  r = run_command({m}, o);
  REQUIRE(r.norms.size() == 3);
  for (const auto& row : r.norms) {
    CHECK(row.element == "delta((1,2))");
    CHECK(row.lower == doctest::Approx(1));
    CHECK(row.upper == doctest::Approx(1));
    CHECK(row.inorm == "1");
    CHECK(row.projective == "1");
  }

  o.element = "(1,1):1/2,(2,1):-3";
  r = run_command({m}, o);
  REQUIRE(r.norms.size() == 3);
  CHECK(r.norms[0].inorm == "7/2");
}

TEST_CASE("a bisection family that misses the support is reported as infeasible") {
  auto m = parse_model(fixture("pair2.json"));
  Options o = opts("norm");
  o.semigroup = "0,3";
  o.element = "ones";
  auto r = run_command({m}, o);
  REQUIRE(!r.norms.empty());
  for (const auto& row : r.norms) CHECK(row.status == "INFEASIBLE");
  CHECK_FALSE(r.failed());
}

TEST_CASE("usage errors") {
  auto pair = parse_model(fixture("pair2.json"));
  CHECK_THROWS_AS(run_command({pair}, opts("graph")), UsageError);
  CHECK_THROWS_AS(run_command({pair}, opts("crossprod")), UsageError);
  CHECK_THROWS_AS(run_command({pair}, opts("verify", {"nonsense"})), UsageError);
  CHECK_THROWS_AS(parse_exponents("1,zero"), UsageError);
  CHECK_THROWS_AS(parse_exponents("1/2"), UsageError);
  Options o = opts("norm");
  o.semigroup = "0,1";
  CHECK_THROWS_AS(run_command({pair}, o), UsageError);
  o.semigroup = "";
  o.element = "delta:(3,3)";
  CHECK_THROWS_AS(run_command({pair}, o), UsageError);
  CHECK_THROWS_AS(run_command({parse_model(fixture("exel_z2.json"))}, opts("norm")), UsageError);
}

TEST_CASE("an explicitly requested suite outside a kind is skipped") {
  auto r = run_command({parse_model(fixture("exel_z2.json"))}, opts("verify", {"norms"}));
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].verdict == "SKIP");
  CHECK_FALSE(r.failed());
}

TEST_CASE("fixed seeds give identical reports across thread counts") {
  std::vector<ModelFile> models;
  for (const char* name : {"pair2.json", "klein_twisted.json", "graph_double_edge.json", "partial_z2.json"})
    models.push_back(parse_model(fixture(name)));
  Options o = opts("verify");
  o.seed = 11;
  o.jobs = 1;
  const auto a = run_command(models, o);
  const auto b = run_command(models, o);
  o.jobs = 4;
  const auto c = run_command(models, o);
  CHECK(a.verdicts_csv() == b.verdicts_csv());
  CHECK(a.norms_csv() == b.norms_csv());
  CHECK(a.verdicts_csv() == c.verdicts_csv());
  CHECK(a.norms_csv() == c.norms_csv());
  CHECK(a.to_json().dump() == c.to_json().dump());
  o.seed = 12;
  CHECK(run_command(models, o).norms_csv() != a.norms_csv());
}

TEST_CASE("report serialization") {
  Report r;
  r.add({"m", "s", "c,1", "FAIL", "quote \"x\""});
  r.norms.push_back({"m", "e", "inf", 1.5, std::numeric_limits<double>::infinity(), 2, "2", "n/a", "ok"});
  CHECK(r.failed());
  CHECK(r.verdicts_csv() == "model,suite,check,verdict,witness\nm,s,\"c,1\",FAIL,\"quote \"\"x\"\"\"\n");
  CHECK(r.norms_csv().find("m,e,inf,1.5,inf,2,2,n/a,ok") != std::string::npos);
  auto j = r.to_json();
  CHECK(j["status"] == "FAIL");
  CHECK(j["checks"][0]["witness"] == "quote \"x\"");
  CHECK_FALSE(j.contains("seconds"));
}
