#include "lpgroupoid/invsemi.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace lpg {

PartialBijection::PartialBijection(std::vector<int> images) : map(std::move(images)) {
  std::vector<char> hit(map.size(), 0);
  for (int y : map) {
    if (y < -1 || y >= static_cast<int>(map.size()))
      throw AxiomError("partial bijection: image out of range");
    if (y >= 0) {
      if (hit[y]) throw AxiomError("partial bijection: not injective at image " + std::to_string(y));
      hit[y] = 1;
    }
  }
}

PartialBijection PartialBijection::identity(std::size_t n) {
  PartialBijection f;
  f.map.resize(n);
  for (std::size_t x = 0; x < n; ++x) f.map[x] = static_cast<int>(x);
  return f;
}

PartialBijection PartialBijection::identity_on(std::size_t n, const std::vector<int>& subset) {
  PartialBijection f = empty(n);
  for (int x : subset) f.map[x] = x;
  return f;
}

PartialBijection PartialBijection::empty(std::size_t n) {
  PartialBijection f;
  f.map.assign(n, -1);
  return f;
}

std::vector<int> PartialBijection::domain() const {
  std::vector<int> out;
  for (std::size_t x = 0; x < map.size(); ++x)
    if (map[x] >= 0) out.push_back(static_cast<int>(x));
  return out;
}

std::vector<int> PartialBijection::range() const {
  std::vector<int> out;
  for (int y : map)
    if (y >= 0) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

bool PartialBijection::is_empty() const {
  return std::all_of(map.begin(), map.end(), [](int y) { return y < 0; });
}

bool PartialBijection::is_idempotent() const {
  for (std::size_t x = 0; x < map.size(); ++x)
    if (map[x] >= 0 && map[x] != static_cast<int>(x)) return false;
  return true;
}

PartialBijection compose(const PartialBijection& h, const PartialBijection& f) {
  if (h.ground() != f.ground()) throw AxiomError("compose: ground sets differ");
  PartialBijection out = PartialBijection::empty(f.ground());
  for (std::size_t x = 0; x < f.ground(); ++x)
    if (f.map[x] >= 0) out.map[x] = h.map[f.map[x]];
  return out;
}

PartialBijection inverse(const PartialBijection& f) {
  PartialBijection out = PartialBijection::empty(f.ground());
  for (std::size_t x = 0; x < f.ground(); ++x)
    if (f.map[x] >= 0) out.map[f.map[x]] = static_cast<int>(x);
  return out;
}

void ISemigroup::finish(std::optional<int> zero) {
  const int n = static_cast<int>(size());
  zero_ = zero;
  idempotents_.clear();
  e_index_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    if (is_idempotent(a)) {
      e_index_[a] = static_cast<int>(idempotents_.size());
      idempotents_.push_back(a);
    }
  const std::size_t m = idempotents_.size();
  MeetTable meet(m, std::vector<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      int prod = mul(idempotents_[i], idempotents_[j]);
      if (e_index_[prod] < 0) throw AxiomError("inverse semigroup: idempotents not closed under product");
      meet[i][j] = e_index_[prod];
    }
  std::optional<int> ezero;
  if (zero_) ezero = e_index_[*zero_];
  e_ = FiniteSemilattice::validate(std::move(meet), ezero, false);
}

ISemigroup validate_inverse_semigroup(const std::vector<std::vector<int>>& mult,
                                      const std::vector<int>& star, std::vector<std::string> labels,
                                      std::optional<int> zero, bool detect_zero) {
  const int n = static_cast<int>(mult.size());
  if (n == 0) throw AxiomError("inverse semigroup: empty");
  if (static_cast<int>(star.size()) != n) throw AxiomError("inverse semigroup: star table size mismatch");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n) throw AxiomError("inverse semigroup: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw AxiomError("inverse semigroup: product out of range");
  }
  for (int v : star)
    if (v < 0 || v >= n) throw AxiomError("inverse semigroup: star out of range");
  auto name = [&](int a) { return labels.empty() ? std::to_string(a) : labels[a]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
          throw AxiomError("inverse semigroup: associativity fails at (" + name(a) + ", " + name(b) +
                           ", " + name(c) + ")");
  for (int t = 0; t < n; ++t) {
    int s = star[t];
    if (mult[mult[t][s]][t] != t)
      throw AxiomError("inverse semigroup: t t* t != t at t = " + name(t));
    if (mult[mult[s][t]][s] != s)
      throw AxiomError("inverse semigroup: t* t t* != t* at t = " + name(t));
    for (int x = 0; x < n; ++x)
      if (x != s && mult[mult[t][x]][t] == t && mult[mult[x][t]][x] == x)
        throw AxiomError("inverse semigroup: " + name(t) + " has two generalized inverses " + name(s) +
                         " and " + name(x));
  }
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (mult[e][e] == e && mult[f][f] == f && mult[e][f] != mult[f][e])
        throw AxiomError("inverse semigroup: idempotents " + name(e) + ", " + name(f) + " do not commute");
  if (!zero && detect_zero && n >= 2)
    for (int z = 0; z < n && !zero; ++z) {
      bool absorbing = true;
      for (int a = 0; a < n && absorbing; ++a) absorbing = mult[z][a] == z && mult[a][z] == z;
      if (absorbing) zero = z;
    }
  if (zero)
    for (int a = 0; a < n; ++a)
      if (mult[*zero][a] != *zero || mult[a][*zero] != *zero)
        throw AxiomError("inverse semigroup: designated zero is not absorbing");
  ISemigroup s;
  s.mult_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s.mult_[static_cast<std::size_t>(a) * n + b] = mult[a][b];
  s.star_ = star;
  s.labels_ = std::move(labels);
  s.finish(zero);
  return s;
}

ISemigroup make_trusted_semigroup(std::vector<int> flat, std::vector<int> star, std::optional<int> zero,
                                  std::vector<std::string> labels) {
  ISemigroup s;
  s.mult_ = std::move(flat);
  s.star_ = std::move(star);
  s.labels_ = std::move(labels);
  s.finish(zero);
  return s;
}

GeneratedSemigroup generate_from_partial_bijections(const std::vector<PartialBijection>& gens,
                                                    std::size_t bound) {
  if (gens.empty()) throw AxiomError("generate_from_partial_bijections: no generators");
  for (const auto& g : gens)
    if (g.ground() != gens.front().ground()) throw AxiomError("generators act on different ground sets");

  std::vector<PartialBijection> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::map<PartialBijection, int> index;
  std::vector<PartialBijection> elems;
  std::vector<int> parent, last_letter;
  std::deque<int> queue;
  auto add = [&](const PartialBijection& f, int par, int letter) {
    auto [it, fresh] = index.emplace(f, static_cast<int>(elems.size()));
    if (fresh) {
      if (elems.size() >= bound)
        throw std::length_error("generate_from_partial_bijections: closure exceeds bound " +
                                std::to_string(bound));
      elems.push_back(f);
      parent.push_back(par);
      last_letter.push_back(letter);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (std::size_t l = 0; l < letters.size(); ++l) add(letters[l], -1, static_cast<int>(l));
  std::vector<std::vector<int>> right;  // right[x][letter] = x * letter
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < letters.size(); ++l) add(compose(elems[x], letters[l]), x, static_cast<int>(l));
  }
  const std::size_t n = elems.size();
  right.assign(n, std::vector<int>(letters.size()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t l = 0; l < letters.size(); ++l) right[x][l] = index.at(compose(elems[x], letters[l]));
  std::vector<int> letter_index(letters.size());
  for (std::size_t l = 0; l < letters.size(); ++l) letter_index[l] = index.at(letters[l]);

  // Elements are indexed in discovery order, so parents precede children.
  std::vector<int> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int prod = parent[b] < 0 ? right[a][last_letter[b]]
                               : right[flat[a * n + parent[b]]][last_letter[b]];
      flat[a * n + b] = prod;
    }
  std::vector<int> star(n);
  std::optional<int> zero;
  for (std::size_t a = 0; a < n; ++a) {
    star[a] = index.at(inverse(elems[a]));
    if (elems[a].is_empty()) zero = static_cast<int>(a);
  }
  GeneratedSemigroup out;
  out.semigroup = make_trusted_semigroup(std::move(flat), std::move(star), zero);
  out.elements = std::move(elems);
  for (std::size_t g = 0; g < gens.size(); ++g) out.generators.push_back(letter_index[2 * g]);
  return out;
}

bool natural_order(const ISemigroup& s, int a, int b) { return s.mul(b, s.mul(s.star(a), a)) == a; }

SpectralAction spectral_action(const ISemigroup& s, bool tight_only) {
  const auto& e = s.semilattice();
  SpectralAction act;
  for (const auto& f : enumerate_filters(e, e.size()))
    if (!tight_only || f.ultra) act.characters.push_back(character_of(e, f));
  std::map<std::vector<char>, int> lookup;
  for (std::size_t k = 0; k < act.characters.size(); ++k)
    lookup[act.characters[k].values] = static_cast<int>(k);
  const int nchars = static_cast<int>(act.characters.size());
  const auto& idem = s.idempotents();
  for (int t = 0; t < static_cast<int>(s.size()); ++t) {
    PartialBijection h = PartialBijection::empty(nchars);
    int src = s.e_index(s.mul(s.star(t), t));
    for (int k = 0; k < nchars; ++k) {
      const auto& phi = act.characters[k];
      if (!phi(src)) continue;
      std::vector<char> img(idem.size());
      for (std::size_t i = 0; i < idem.size(); ++i) {
        int conj = s.mul(s.star(t), s.mul(idem[i], t));
        img[i] = phi.values[s.e_index(conj)];
      }
      auto it = lookup.find(img);
      if (it == lookup.end()) throw AxiomError("spectral_action: image is not a listed character");
      h.map[k] = it->second;
    }
    act.maps.push_back(PartialBijection(h.map));
  }
  for (int a = 0; a < static_cast<int>(s.size()); ++a)
    for (int b = 0; b < static_cast<int>(s.size()); ++b)
      if (compose(act.maps[a], act.maps[b]) != act.maps[s.mul(a, b)])
        throw AxiomError("spectral_action: h_" + s.label(a) + " h_" + s.label(b) + " != h_" +
                         s.label(s.mul(a, b)));
  return act;
}

int ExelSemigroup::index_of(const ExelElement& x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) throw AxiomError("exel: element not in the model");
  return static_cast<int>(it - elements.begin());
}

namespace {

std::uint32_t translate(const FiniteGroup& g, int by, std::uint32_t set) {
  std::uint32_t out = 0;
  for (int x = 0; x < g.size(); ++x)
    if (set >> x & 1U) out |= 1U << g.mul(by, x);
  return out;
}

}  // namespace

ExelElement ExelSemigroup::multiply(const ExelElement& a, const ExelElement& b) const {
  return {a.set | translate(group, a.g, b.set), group.mul(a.g, b.g)};
}

ExelElement ExelSemigroup::star(const ExelElement& a) const {
  int gi = group.inverse(a.g);
  return {translate(group, gi, a.set), gi};
}

ExelSemigroup exel_semigroup(const FiniteGroup& g) {
  const int n = g.size();
  if (n > 6) throw std::length_error("exel_semigroup: group order above 6");
  ExelSemigroup ex;
  ex.group = g;
  const std::uint32_t one = 1U << g.identity;
  for (std::uint32_t set = 0; set < (1U << n); ++set) {
    if (!(set & one)) continue;
    for (int x = 0; x < n; ++x)
      if (set >> x & 1U) ex.elements.push_back({set, x});
  }
  std::sort(ex.elements.begin(), ex.elements.end());
  const std::size_t m = ex.elements.size();
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  std::vector<int> star(m);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    star[a] = ex.index_of(ex.star(ex.elements[a]));
    for (std::size_t b = 0; b < m; ++b) mult[a][b] = ex.index_of(ex.multiply(ex.elements[a], ex.elements[b]));
    std::string lab = "({";
    bool first = true;
    for (int x = 0; x < n; ++x)
      if (ex.elements[a].set >> x & 1U) {
        lab += (first ? "" : ",") + g.names[x];
        first = false;
      }
    labels.push_back(lab + "}," + g.names[ex.elements[a].g] + ")");
  }
  ex.semigroup = validate_inverse_semigroup(mult, star, labels, std::nullopt, false);
  for (int t = 0; t < n; ++t) {
    ex.bracket.push_back(ex.index_of({one | (1U << t), t}));
    ex.e.push_back(ex.index_of({one | (1U << t), g.identity}));
  }
  return ex;
}

}  // namespace lpg
