// Finite meet-semilattices, their filters, covers and tight characters.

#ifndef LPGROUPOID_SEMILATTICE_HPP
#define LPGROUPOID_SEMILATTICE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpg {

class AxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MeetTable = std::vector<std::vector<int>>;

class FiniteSemilattice {
 public:
  FiniteSemilattice() = default;

  /// Validates the table. When `zero` is not given and `detect_zero` is set, an
  /// absorbing element is taken as the zero provided there are at least two elements.
  static FiniteSemilattice validate(MeetTable meet, std::optional<int> zero = std::nullopt,
                                    bool detect_zero = true);

  std::size_t size() const { return meet_.size(); }
  int meet(int a, int b) const { return meet_[a][b]; }
  bool leq(int a, int b) const { return meet_[a][b] == a; }
  std::optional<int> zero() const { return zero_; }
  bool is_zero(int e) const { return zero_ && *zero_ == e; }
  const std::vector<int>& atoms() const { return atoms_; }
  std::vector<int> atoms_below(int e) const;
  std::vector<int> down_set(int e) const;
  std::vector<int> up_set(int e) const;
  const MeetTable& table() const { return meet_; }

 private:
  MeetTable meet_;
  std::optional<int> zero_;
  std::vector<int> atoms_;
};

/// A {0,1}-valued character, stored with the element generating its support.
struct Character {
  std::vector<char> values;
  int generator = -1;

  bool operator()(int e) const { return values[e] != 0; }
  friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
};

struct Filter {
  std::vector<int> members;  // sorted
  int generator = -1;
  bool ultra = false;
};

inline constexpr std::size_t kDefaultFilterBound = 20;

/// All proper filters; each is principal, the upper set of a nonzero element.
std::vector<Filter> enumerate_filters(const FiniteSemilattice& e,
                                      std::size_t bound = kDefaultFilterBound);

Character character_of(const FiniteSemilattice& e, const Filter& f);
bool is_character(const FiniteSemilattice& e, const Character& phi);

/// F covers e: every nonzero z <= e meets some member of F. Throws when F is
/// not contained in the down-set of e.
bool is_cover(const FiniteSemilattice& e, int elem, const std::vector<int>& family);

/// Ultrafilter characters, which make up the tight spectrum of a finite semilattice.
std::vector<Character> tight_characters(const FiniteSemilattice& e,
                                        std::size_t bound = kDefaultFilterBound);

/// Cover-to-join test of a character against every cover of every element.
/// Exponential in the size of down-sets; intended for small semilattices.
bool is_tight_character(const FiniteSemilattice& e, const Character& phi);

}  // namespace lpg

#endif  // LPGROUPOID_SEMILATTICE_HPP
