// JSON model files: parsing into raw tables, scalar literals, and the
// constructions the commands run their checks on.

#ifndef LPG_TOOLS_MODEL_HPP
#define LPG_TOOLS_MODEL_HPP

#include "lpgroupoid/graphalg.hpp"
#include "lpgroupoid/partact.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpg::cli {

/// A malformed model; where is a JSON pointer or "line L, column C".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

enum class ModelKind { Groupoid, Semigroup, Graph, PartialAction, Action };

const char* kind_name(ModelKind k);

/// A scalar literal kept as text until the field mode is known.
struct ScalarText {
  std::string re = "1", im = "0";
  std::string where;
};

struct GroupSpec {
  std::string name;  // "Z<n>", "Z2xZ2", "S3", "trivial" or "table"
  std::vector<std::vector<int>> table;
  std::vector<std::string> names;
};

struct SemigroupSpec {
  std::optional<GroupSpec> exel;  // S(G) instead of explicit tables
  std::vector<std::vector<int>> mult;
  std::vector<int> star;
  std::vector<std::string> labels;
};

struct TwistEntry {
  int s = 0, t = 0, x = 0;
  ScalarText value;
};

struct ModelFile {
  std::string path;
  ModelKind kind = ModelKind::Groupoid;
  std::optional<FieldMode> mode;
  std::optional<std::uint64_t> seed;
  nlohmann::json source;

  // groupoid
  GroupoidTables tables;
  std::vector<std::tuple<int, int, ScalarText>> cocycle;  // entries other than 1
  std::vector<std::vector<int>> bisections;               // explicit generators
  std::vector<std::pair<int, ScalarText>> element;

  // semigroup, action
  SemigroupSpec semigroup;
  int points = 0;
  std::vector<std::vector<int>> maps;
  std::vector<TwistEntry> twist;

  // partial action
  GroupSpec group;

  // graph
  int vertices = 0;
  std::vector<int> range, source_of;
  std::vector<std::string> vertex_names, edge_names;
  Regularity convention = Regularity::Standard;
};

ModelFile parse_model(const std::string& path);
ModelFile parse_model_json(const nlohmann::json& j, const std::string& path = "<inline>");

template <Scalar T>
T scalar_value(const ScalarText& s);

template <>
Rational scalar_value<Rational>(const ScalarText& s);
template <>
GaussRational scalar_value<GaussRational>(const ScalarText& s);

FiniteGroup build_group(const GroupSpec& g);
/// Validates the tables; throws AxiomError.
ISemigroup build_semigroup(const SemigroupSpec& s);
std::shared_ptr<const Graph> build_graph(const ModelFile& m);

template <Scalar T>
std::shared_ptr<const Cocycle<T>> build_cocycle(const ModelFile& m, std::shared_ptr<const FiniteGroupoid> g) {
  const int n = g->size();
  std::vector<T> v(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->composable(a, b)) v[static_cast<std::size_t>(a) * n + b] = T(1);
  for (const auto& [a, b, text] : m.cocycle) {
    if (!g->composable(a, b))
      throw SchemaError(text.where, "(" + g->label(a) + ", " + g->label(b) + ") is not a composable pair");
    v[static_cast<std::size_t>(a) * n + b] = scalar_value<T>(text);
  }
  return std::make_shared<const Cocycle<T>>(validate_cocycle(std::move(g), std::move(v)));
}

template <Scalar T>
std::shared_ptr<const PartialTwist<T>> build_partial_twist(const ModelFile& m) {
  auto A = std::make_shared<const PartialAction>(
      validate_partial_action(build_group(m.group), m.points, [&] {
        std::vector<PartialBijection> theta;
        for (const auto& row : m.maps) theta.emplace_back(row);
        return theta;
      }()));
  auto u = trivial_partial_twist_table<T>(*A);
  const int n = A->group.size();
  for (const auto& e : m.twist) {
    if (e.s >= n || e.t >= n || e.x >= A->points) throw SchemaError(e.value.where, "index out of range");
    u[static_cast<std::size_t>(e.s) * n + e.t][e.x] = scalar_value<T>(e.value);
  }
  return std::make_shared<const PartialTwist<T>>(validate_partial_twist(A, std::move(u)));
}

template <Scalar T>
TwistedActionData<T> build_action(const ModelFile& m) {
  ISemigroup S = build_semigroup(m.semigroup);
  std::vector<PartialBijection> h;
  for (const auto& row : m.maps) h.emplace_back(row);
  auto data = untwisted<T>(validate_action(std::move(S), m.points, std::move(h)));
  const int n = static_cast<int>(data.semigroup().size());
  for (const auto& e : m.twist) {
    if (e.s >= n || e.t >= n || e.x >= m.points) throw SchemaError(e.value.where, "index out of range");
    data.twist(e.s, e.t, e.x) = scalar_value<T>(e.value);
  }
  return data;
}

}  // namespace lpg::cli

#endif  // LPG_TOOLS_MODEL_HPP
