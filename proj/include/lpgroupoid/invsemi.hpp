// Finite inverse semigroups: partial bijections, validation, natural order,
// the action on the character space, and Exel's semigroup S(G).

#ifndef LPGROUPOID_INVSEMI_HPP
#define LPGROUPOID_INVSEMI_HPP

#include "lpgroupoid/finite_group.hpp"
#include "lpgroupoid/semilattice.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lpg {

/// Partial bijection of {0, ..., n-1}; map[x] is the image of x or -1.
struct PartialBijection {
  std::vector<int> map;

  PartialBijection() = default;
  explicit PartialBijection(std::vector<int> images);
  static PartialBijection identity(std::size_t n);
  static PartialBijection identity_on(std::size_t n, const std::vector<int>& subset);
  static PartialBijection empty(std::size_t n);

  std::size_t ground() const { return map.size(); }
  bool defined(int x) const { return map[x] >= 0; }
  int operator()(int x) const { return map[x]; }
  std::vector<int> domain() const;
  std::vector<int> range() const;
  bool is_empty() const;
  bool is_idempotent() const;

  auto operator<=>(const PartialBijection&) const = default;
};

/// (h * f)(x) = h(f(x)): apply f first.
PartialBijection compose(const PartialBijection& h, const PartialBijection& f);
PartialBijection inverse(const PartialBijection& f);

class ISemigroup {
 public:
  ISemigroup() = default;

  std::size_t size() const { return star_.size(); }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * size() + b]; }
  int star(int a) const { return star_[a]; }
  bool is_idempotent(int a) const { return mul(a, a) == a; }
  std::optional<int> zero() const { return zero_; }

  /// Idempotents in increasing index order; E(S) is indexed by position here.
  const std::vector<int>& idempotents() const { return idempotents_; }
  int e_index(int idempotent) const { return e_index_[idempotent]; }
  const FiniteSemilattice& semilattice() const { return e_; }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }

  friend ISemigroup validate_inverse_semigroup(const std::vector<std::vector<int>>& mult,
                                               const std::vector<int>& star,
                                               std::vector<std::string> labels,
                                               std::optional<int> zero, bool detect_zero);
  friend ISemigroup make_trusted_semigroup(std::vector<int> flat, std::vector<int> star,
                                           std::optional<int> zero, std::vector<std::string> labels);

 private:
  void finish(std::optional<int> zero);

  std::vector<int> mult_;
  std::vector<int> star_;
  std::vector<std::string> labels_;
  std::optional<int> zero_;
  std::vector<int> idempotents_;
  std::vector<int> e_index_;
  FiniteSemilattice e_;
};

/// Verifies associativity, t = t t* t, t* = t* t t*, uniqueness of the
/// generalized inverse and commutation of idempotents. Without an explicit
/// zero, an absorbing element of a semigroup with two or more elements is the zero.
ISemigroup validate_inverse_semigroup(const std::vector<std::vector<int>>& mult,
                                      const std::vector<int>& star,
                                      std::vector<std::string> labels = {},
                                      std::optional<int> zero = std::nullopt,
                                      bool detect_zero = true);

/// Builds the object from tables that are inverse by construction (closures of
/// partial bijections); only the derived data is computed.
ISemigroup make_trusted_semigroup(std::vector<int> flat, std::vector<int> star,
                                  std::optional<int> zero, std::vector<std::string> labels = {});

inline constexpr std::size_t kDefaultClosureBound = 5000;

struct GeneratedSemigroup {
  ISemigroup semigroup;
  std::vector<PartialBijection> elements;
  std::vector<int> generators;  // index of each input generator
};

GeneratedSemigroup generate_from_partial_bijections(const std::vector<PartialBijection>& gens,
                                                    std::size_t bound = kDefaultClosureBound);

/// s <= t iff s = t s* s.
bool natural_order(const ISemigroup& s, int a, int b);

/// The action of S on the characters of E(S): h_t(phi)(e) = phi(t* e t).
struct SpectralAction {
  std::vector<Character> characters;      // characters of E(S), indexed by E position
  std::vector<PartialBijection> maps;     // one per element of S, on character indices
};

SpectralAction spectral_action(const ISemigroup& s, bool tight_only = false);

/// Element (A, g) of S(G), with A a bitmask over G containing 1 and g.
struct ExelElement {
  std::uint32_t set = 0;
  int g = 0;
  auto operator<=>(const ExelElement&) const = default;
};

struct ExelSemigroup {
  FiniteGroup group;
  ISemigroup semigroup;
  std::vector<ExelElement> elements;
  std::vector<int> bracket;  // [t]
  std::vector<int> e;        // e_t = [t][t^-1]

  int index_of(const ExelElement& x) const;
  ExelElement multiply(const ExelElement& a, const ExelElement& b) const;
  ExelElement star(const ExelElement& a) const;
};

ExelSemigroup exel_semigroup(const FiniteGroup& g);

}  // namespace lpg

#endif  // LPGROUPOID_INVSEMI_HPP
