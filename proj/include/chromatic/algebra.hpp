#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromatic/signature.hpp"

namespace chromatic {

using Atom = int;
using AtomTriple = std::array<Atom, 3>;

// Index of the identity atom 1' in chromatic structures. Proper colour c_i
// has index i.
inline constexpr Atom identity_atom = 0;

inline constexpr int max_atoms = 64;
inline constexpr std::size_t max_witnesses = 16;

// Subset of the atoms of a fixed structure, one bit per atom.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int width, std::uint64_t bits = 0) : width_(width), bits_(bits & full_mask(width)) {
    if (width < 0 || width > max_atoms) throw std::invalid_argument("AtomSet width out of range");
  }

  static AtomSet of(int width, std::initializer_list<Atom> atoms) {
    AtomSet s(width);
    for (Atom a : atoms) s.insert(a);
    return s;
  }

  int width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(Atom a) const { return a >= 0 && a < width_ && ((bits_ >> a) & 1u); }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }

  void insert(Atom a) {
    if (a < 0 || a >= width_) throw std::out_of_range("atom outside AtomSet width");
    bits_ |= std::uint64_t{1} << a;
  }

  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    for (Atom a = 0; a < width_; ++a)
      if (contains(a)) out.push_back(a);
    return out;
  }

  AtomSet operator|(const AtomSet& o) const { return AtomSet(width_, bits_ | o.bits_); }
  AtomSet operator&(const AtomSet& o) const { return AtomSet(width_, bits_ & o.bits_); }
  AtomSet complement() const { return AtomSet(width_, ~bits_); }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  static std::uint64_t full_mask(int width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

  int width_ = 0;
  std::uint64_t bits_ = 0;
};

// (X, converse, I, T). Immutable once built; T is a dense bitset over X^3.
class AtomStructure {
 public:
  AtomStructure(int atom_count, std::vector<Atom> converse, std::vector<Atom> identity_atoms,
                const std::vector<AtomTriple>& triples)
      : atom_count_(atom_count),
        converse_(std::move(converse)),
        identity_(atom_count),
        bits_((static_cast<std::size_t>(atom_count) * atom_count * atom_count + 63) / 64, 0) {
    if (atom_count < 1 || atom_count > max_atoms)
      throw std::invalid_argument("atom count must lie in [1, 64]");
    if (static_cast<int>(converse_.size()) != atom_count)
      throw std::invalid_argument("converse must list one image per atom");
    for (Atom a = 0; a < atom_count; ++a) {
      Atom c = converse_[a];
      if (c < 0 || c >= atom_count) throw std::invalid_argument("converse image out of range");
      if (converse_[c] != a) throw std::invalid_argument("converse is not an involution");
    }
    for (Atom e : identity_atoms) identity_.insert(e);
    for (const auto& t : triples) {
      for (Atom a : t)
        if (a < 0 || a >= atom_count) throw std::invalid_argument("triple atom out of range");
      set(t);
    }
  }

  int atom_count() const { return atom_count_; }
  Atom converse(Atom a) const { return converse_.at(a); }
  const std::vector<Atom>& converse_map() const { return converse_; }
  const AtomSet& identity_atoms() const { return identity_; }

  bool consistent(Atom a, Atom b, Atom c) const {
    std::size_t i = index(a, b, c);
    return (bits_[i / 64] >> (i % 64)) & 1u;
  }
  bool consistent(const AtomTriple& t) const { return consistent(t[0], t[1], t[2]); }

  std::vector<AtomTriple> triples() const {
    std::vector<AtomTriple> out;
    for (Atom a = 0; a < atom_count_; ++a)
      for (Atom b = 0; b < atom_count_; ++b)
        for (Atom c = 0; c < atom_count_; ++c)
          if (consistent(a, b, c)) out.push_back({a, b, c});
    return out;
  }

  AtomSet all_atoms() const { return AtomSet(atom_count_).complement(); }

  bool symmetric() const {
    for (Atom a = 0; a < atom_count_; ++a)
      if (converse_[a] != a) return false;
    return true;
  }

 private:
  std::size_t index(Atom a, Atom b, Atom c) const {
    return (static_cast<std::size_t>(a) * atom_count_ + b) * atom_count_ + c;
  }
  void set(const AtomTriple& t) {
    std::size_t i = index(t[0], t[1], t[2]);
    bits_[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  int atom_count_;
  std::vector<Atom> converse_;
  AtomSet identity_;
  std::vector<std::uint64_t> bits_;
};

// The six triangle traverses of (a,b,c), deduplicated and sorted.
inline std::vector<AtomTriple> peircean_transforms(const AtomTriple& t, const AtomStructure& x) {
  const auto [a, b, c] = t;
  const Atom ca = x.converse(a), cb = x.converse(b), cc = x.converse(c);
  std::vector<AtomTriple> out{{a, b, c}, {ca, c, b}, {c, cb, a}, {b, cc, ca}, {cc, a, cb}, {cb, ca, cc}};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct IdentityViolation {
  Atom b;
  Atom c;
  // true: b == c but no identity atom e has (e,b,c) in T.
  // false: b != c yet some identity atom e has (e,b,c) in T.
  bool missing;
};

struct ClosureViolation {
  AtomTriple triple;     // in T
  AtomTriple transform;  // not in T
};

struct NaReport {
  bool valid = true;
  std::vector<IdentityViolation> identity_violations;
  std::vector<ClosureViolation> closure_violations;
  std::size_t identity_violation_count = 0;
  std::size_t closure_violation_count = 0;
};

// Checks the two conditions characterising atom structures of nonassociative
// algebras: the identity law and closure of T under Peircean transforms.
inline NaReport check_na_atom_structure(const AtomStructure& x) {
  NaReport report;
  const int k = x.atom_count();
  const auto& ids = x.identity_atoms();
  for (Atom b = 0; b < k; ++b) {
    for (Atom c = 0; c < k; ++c) {
      bool witnessed = false;
      for (Atom e : ids.atoms())
        if (x.consistent(e, b, c)) witnessed = true;
      if (witnessed != (b == c)) {
        ++report.identity_violation_count;
        if (report.identity_violations.size() < max_witnesses)
          report.identity_violations.push_back({b, c, b == c});
      }
    }
  }
  for (const auto& t : x.triples()) {
    for (const auto& u : peircean_transforms(t, x)) {
      if (!x.consistent(u)) {
        ++report.closure_violation_count;
        if (report.closure_violations.size() < max_witnesses) report.closure_violations.push_back({t, u});
      }
    }
  }
  report.valid = report.identity_violation_count == 0 && report.closure_violation_count == 0;
  return report;
}

// Complex-algebra composition: {u : (s,r,u) in T for some s in a, r in b}.
inline AtomSet compose(const AtomStructure& x, const AtomSet& a, const AtomSet& b) {
  if (a.width() != x.atom_count() || b.width() != x.atom_count())
    throw std::invalid_argument("AtomSet width does not match structure");
  AtomSet out(x.atom_count());
  for (Atom s : a.atoms())
    for (Atom r : b.atoms())
      for (Atom u = 0; u < x.atom_count(); ++u)
        if (x.consistent(s, r, u)) out.insert(u);
  return out;
}

inline AtomSet converse(const AtomStructure& x, const AtomSet& a) {
  AtomSet out(x.atom_count());
  for (Atom s : a.atoms()) out.insert(x.converse(s));
  return out;
}

struct AssociativityResult {
  bool associative = true;
  std::optional<AtomTriple> witness;  // (a,b,c) with (a;b);c != a;(b;c)
};

// Composition is additive in both arguments, so checking singletons suffices.
inline AssociativityResult is_associative(const AtomStructure& x) {
  if (!check_na_atom_structure(x).valid)
    throw std::invalid_argument("associativity is only defined for valid atom structures");
  const int k = x.atom_count();
  std::vector<AtomSet> single;
  for (Atom a = 0; a < k; ++a) single.push_back(AtomSet::of(k, {a}));
  std::vector<AtomSet> pair(static_cast<std::size_t>(k) * k);
  for (Atom a = 0; a < k; ++a)
    for (Atom b = 0; b < k; ++b) pair[a * k + b] = compose(x, single[a], single[b]);
  for (Atom a = 0; a < k; ++a)
    for (Atom b = 0; b < k; ++b)
      for (Atom c = 0; c < k; ++c)
        if (compose(x, pair[a * k + b], single[c]) != compose(x, single[a], pair[b * k + c]))
          return {false, AtomTriple{a, b, c}};
  return {};
}

// Atom structure of the chromatic algebra: atoms {1', c_1..c_n}, all
// self-converse, (1',b,c) consistent iff b == c (closed under transforms),
// proper (a,b,c) consistent iff |{a,b,c}| is an allowed size.
inline AtomStructure chromatic_atoms(const Signature& sig) {
  const int n = sig.n();
  if (n + 1 > max_atoms) throw std::invalid_argument("too many colours for an atom structure");
  std::vector<AtomTriple> t;
  for (Atom b = 0; b <= n; ++b) {
    t.push_back({identity_atom, b, b});
    t.push_back({b, identity_atom, b});
    t.push_back({b, b, identity_atom});
  }
  for (Atom a = 1; a <= n; ++a)
    for (Atom b = 1; b <= n; ++b)
      for (Atom c = 1; c <= n; ++c) {
        int distinct = 1 + (b != a) + (c != a && c != b);
        if (sig.allows(distinct)) t.push_back({a, b, c});
      }
  std::vector<Atom> conv(n + 1);
  for (Atom a = 0; a <= n; ++a) conv[a] = a;
  return AtomStructure(n + 1, std::move(conv), {identity_atom}, t);
}

}  // namespace chromatic
