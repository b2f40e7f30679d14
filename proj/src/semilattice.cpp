#include "lpgroupoid/semilattice.hpp"

#include <algorithm>
#include <sstream>

namespace lpg {

namespace {

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

FiniteSemilattice FiniteSemilattice::validate(MeetTable meet, std::optional<int> zero,
                                              bool detect_zero) {
  const int n = static_cast<int>(meet.size());
  if (n == 0) throw AxiomError("semilattice: empty element set");
  for (const auto& row : meet) {
    if (static_cast<int>(row.size()) != n) throw AxiomError("semilattice: meet table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw AxiomError("semilattice: meet value out of range");
  }
  for (int a = 0; a < n; ++a) {
    if (meet[a][a] != a) throw AxiomError("semilattice: idempotency fails at " + std::to_string(a));
    for (int b = 0; b < n; ++b) {
      if (meet[a][b] != meet[b][a])
        throw AxiomError("semilattice: commutativity fails at (" + std::to_string(a) + ", " +
                         std::to_string(b) + ")");
      for (int c = 0; c < n; ++c)
        if (meet[meet[a][b]][c] != meet[a][meet[b][c]])
          throw AxiomError("semilattice: associativity fails at " + triple(a, b, c));
    }
  }
  FiniteSemilattice s;
  s.meet_ = std::move(meet);
  if (zero) {
    if (*zero < 0 || *zero >= n) throw AxiomError("semilattice: zero out of range");
    for (int e = 0; e < n; ++e)
      if (s.meet_[*zero][e] != *zero)
        throw AxiomError("semilattice: designated zero is not absorbing at " + std::to_string(e));
    s.zero_ = zero;
  } else if (detect_zero && n >= 2) {
    for (int z = 0; z < n && !s.zero_; ++z) {
      bool absorbing = true;
      for (int e = 0; e < n && absorbing; ++e) absorbing = s.meet_[z][e] == z;
      if (absorbing) s.zero_ = z;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (s.is_zero(a)) continue;
    bool minimal = true;
    for (int b = 0; b < n && minimal; ++b)
      if (b != a && !s.is_zero(b) && s.leq(b, a)) minimal = false;
    if (minimal) s.atoms_.push_back(a);
  }
  return s;
}

std::vector<int> FiniteSemilattice::atoms_below(int e) const {
  std::vector<int> out;
  for (int a : atoms_)
    if (leq(a, e)) out.push_back(a);
  return out;
}

std::vector<int> FiniteSemilattice::down_set(int e) const {
  std::vector<int> out;
  for (int z = 0; z < static_cast<int>(size()); ++z)
    if (leq(z, e)) out.push_back(z);
  return out;
}

std::vector<int> FiniteSemilattice::up_set(int e) const {
  std::vector<int> out;
  for (int z = 0; z < static_cast<int>(size()); ++z)
    if (leq(e, z)) out.push_back(z);
  return out;
}

std::vector<Filter> enumerate_filters(const FiniteSemilattice& e, std::size_t bound) {
  if (e.size() > bound)
    throw std::length_error("enumerate_filters: semilattice has " + std::to_string(e.size()) +
                            " elements, bound is " + std::to_string(bound));
  std::vector<Filter> out;
  const auto& atoms = e.atoms();
  for (int z = 0; z < static_cast<int>(e.size()); ++z) {
    if (e.is_zero(z)) continue;
    Filter f;
    f.members = e.up_set(z);
    f.generator = z;
    f.ultra = std::find(atoms.begin(), atoms.end(), z) != atoms.end();
    out.push_back(std::move(f));
  }
  return out;
}

Character character_of(const FiniteSemilattice& e, const Filter& f) {
  Character c;
  c.values.assign(e.size(), 0);
  for (int m : f.members) c.values[m] = 1;
  c.generator = f.generator;
  return c;
}

bool is_character(const FiniteSemilattice& e, const Character& phi) {
  bool nonzero = false;
  const int n = static_cast<int>(e.size());
  for (int a = 0; a < n; ++a) {
    nonzero = nonzero || phi(a);
    for (int b = 0; b < n; ++b)
      if (phi(e.meet(a, b)) != (phi(a) && phi(b))) return false;
  }
  return nonzero;
}

bool is_cover(const FiniteSemilattice& e, int elem, const std::vector<int>& family) {
  for (int f : family)
    if (!e.leq(f, elem))
      throw AxiomError("is_cover: " + std::to_string(f) + " is not below " + std::to_string(elem));
  for (int a : e.atoms_below(elem)) {
    bool met = false;
    for (int f : family)
      if (!e.is_zero(e.meet(a, f))) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

std::vector<Character> tight_characters(const FiniteSemilattice& e, std::size_t bound) {
  std::vector<Character> out;
  for (const auto& f : enumerate_filters(e, bound))
    if (f.ultra) out.push_back(character_of(e, f));
  return out;
}

bool is_tight_character(const FiniteSemilattice& e, const Character& phi) {
  const int n = static_cast<int>(e.size());
  for (int x = 0; x < n; ++x) {
    if (!phi(x)) continue;
    auto below = e.down_set(x);
    if (below.size() > 20)
      throw std::length_error("is_tight_character: down-set too large to enumerate covers");
    for (unsigned long mask = 0; mask < (1UL << below.size()); ++mask) {
      std::vector<int> family;
      bool hit = false;
      for (std::size_t k = 0; k < below.size(); ++k)
        if (mask >> k & 1UL) {
          family.push_back(below[k]);
          hit = hit || phi(below[k]);
        }
      if (!hit && is_cover(e, x, family)) return false;
    }
  }
  return true;
}

}  // namespace lpg
