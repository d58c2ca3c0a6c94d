#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromatic/algebra.hpp"
#include "chromatic/signature.hpp"

namespace chromatic {

using Vertex = int;
using Colour = std::uint8_t;

inline constexpr int max_colours = 64;

// Position of edge {i,j}, i < j, in the column-major upper triangle:
// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
inline constexpr std::size_t edge_index(Vertex i, Vertex j) {
  return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
}

inline constexpr std::size_t edge_count(int m) { return m < 2 ? 0 : static_cast<std::size_t>(m) * (m - 1) / 2; }

// Colouring of the edges of K_m by colours 1..n. The diagonal carries the
// identity implicitly and is not stored.
class EdgeColouring {
 public:
  EdgeColouring() = default;

  EdgeColouring(int m, int n, std::vector<Colour> colours) : m_(m), n_(n), colours_(std::move(colours)) {
    if (m < 0) throw std::invalid_argument("vertex count must be non-negative");
    if (n < 1 || n > max_colours) throw std::invalid_argument("colour count must lie in [1, 64]");
    if (colours_.size() != edge_count(m)) throw std::invalid_argument("edge list length does not match K_m");
    for (Colour c : colours_)
      if (c < 1 || c > n) throw std::invalid_argument("edge colour outside 1..n");
  }

  template <typename F>
  static EdgeColouring from_function(int m, int n, F&& colour_of) {
    std::vector<Colour> cs(edge_count(m));
    for (Vertex j = 1; j < m; ++j)
      for (Vertex i = 0; i < j; ++i) cs[edge_index(i, j)] = static_cast<Colour>(colour_of(i, j));
    return EdgeColouring(m, n, std::move(cs));
  }

  int vertex_count() const { return m_; }
  int colour_count() const { return n_; }

  Colour colour(Vertex i, Vertex j) const {
    if (i == j || i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("no edge between these vertices");
    return i < j ? colours_[edge_index(i, j)] : colours_[edge_index(j, i)];
  }

  // Unchecked access for hot loops; requires i != j, both in range.
  Colour at(Vertex i, Vertex j) const { return i < j ? colours_[edge_index(i, j)] : colours_[edge_index(j, i)]; }

  const std::vector<Colour>& edge_colours() const { return colours_; }

  EdgeColouring recoloured(Vertex i, Vertex j, Colour c) const {
    if (i == j) throw std::invalid_argument("cannot colour a loop");
    std::vector<Colour> cs = colours_;
    cs[i < j ? edge_index(i, j) : edge_index(j, i)] = c;
    return EdgeColouring(m_, n_, std::move(cs));
  }

  // Relabels vertex v as perm[v].
  EdgeColouring permuted(const std::vector<Vertex>& perm) const {
    if (static_cast<int>(perm.size()) != m_) throw std::invalid_argument("permutation size mismatch");
    std::vector<Colour> cs(colours_.size());
    for (Vertex j = 1; j < m_; ++j)
      for (Vertex i = 0; i < j; ++i) {
        Vertex a = perm[i], b = perm[j];
        cs[a < b ? edge_index(a, b) : edge_index(b, a)] = colours_[edge_index(i, j)];
      }
    return EdgeColouring(m_, n_, std::move(cs));
  }

  // Applies colour map c -> map[c] (map[0] ignored).
  EdgeColouring recoloured_by(const std::vector<Colour>& map) const {
    std::vector<Colour> cs(colours_.size());
    for (std::size_t e = 0; e < cs.size(); ++e) cs[e] = map.at(colours_[e]);
    return EdgeColouring(m_, n_, std::move(cs));
  }

  // Subgraph induced by the given vertices, in the given order.
  EdgeColouring induced(const std::vector<Vertex>& vertices) const {
    const int k = static_cast<int>(vertices.size());
    return from_function(k, n_, [&](Vertex i, Vertex j) { return colour(vertices[i], vertices[j]); });
  }

  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;
  friend auto operator<=>(const EdgeColouring& a, const EdgeColouring& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.colours_ <=> b.colours_;
  }

 private:
  int m_ = 0;
  int n_ = 1;
  std::vector<Colour> colours_;
};

inline EdgeColouring monochromatic(int m, int n = 1) {
  return EdgeColouring(m, n, std::vector<Colour>(edge_count(m), 1));
}

// Number of distinct colours on the triangle x,y,z.
inline int classify_triangle(const EdgeColouring& g, Vertex x, Vertex y, Vertex z) {
  if (x == y || y == z || x == z) throw std::invalid_argument("triangle needs three distinct vertices");
  const Colour a = g.colour(x, y), b = g.colour(y, z), c = g.colour(x, z);
  return 1 + (b != a) + (c != a && c != b);
}

inline int distinct_count(Colour a, Colour b, Colour c) { return 1 + (b != a) + (c != a && c != b); }

inline int chromatic_degree(const EdgeColouring& g, Vertex v) {
  if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  std::uint64_t seen = 0;
  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (w != v) seen |= std::uint64_t{1} << (g.at(v, w) - 1);
  return std::popcount(seen);
}

// Colour multiset [a,b,c] with a <= b <= c.
using ColourTriple = std::array<int, 3>;

inline ColourTriple sorted_triple(int a, int b, int c) {
  ColourTriple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

// All multisets over 1..n whose number of distinct members is allowed by sig.
inline std::vector<ColourTriple> required_multisets(const Signature& sig) {
  std::vector<ColourTriple> out;
  const int n = sig.n();
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = b; c <= n; ++c)
        if (sig.allows(distinct_count(static_cast<Colour>(a), static_cast<Colour>(b), static_cast<Colour>(c))))
          out.push_back({a, b, c});
  return out;
}

struct ForbiddenWitness {
  std::array<Vertex, 3> vertices;  // x < y < z
  ColourTriple colours;            // (xy, xz, yz)
};

struct StrongFailure {
  Vertex x, y;           // edge, x < y, of colour triple[2]
  ColourTriple triple;   // consistent (a,b,c): no z with xz = a, zy = b
};

struct VerificationReport {
  Level level_requested = Level::feeble;
  bool passed = false;
  bool surjective = false;
  std::vector<ForbiddenWitness> forbidden_witnesses;
  std::vector<ColourTriple> missing_required;
  std::vector<StrongFailure> strong_failures;
  std::size_t forbidden_count = 0;
  std::size_t missing_count = 0;
  std::size_t strong_failure_count = 0;
  std::vector<int> unused_colours;
};

// Checks a colouring against the chromatic algebra `sig` at `level`:
//   feeble:      surjective and no triangle whose type is forbidden;
//   qualitative: additionally every allowed colour multiset occurs;
//   strong:      additionally every edge (x,y) of colour c has, for every
//                consistent (a,b,c), a z with xz = a and zy = b.
// Witness lists are in lexicographic order and hold at most 16 entries.
inline VerificationReport verify(const EdgeColouring& g, const Signature& sig, Level level) {
  if (g.colour_count() != sig.n()) throw std::invalid_argument("colouring and signature disagree on n");
  const int m = g.vertex_count();
  const int n = sig.n();
  VerificationReport r;
  r.level_requested = level;

  std::uint64_t used = 0;
  for (Colour c : g.edge_colours()) used |= std::uint64_t{1} << (c - 1);
  for (int c = 1; c <= n; ++c)
    if (!((used >> (c - 1)) & 1u)) r.unused_colours.push_back(c);
  r.surjective = r.unused_colours.empty();

  std::vector<char> realised(static_cast<std::size_t>(n) * n * n, 0);
  auto ms_index = [n](ColourTriple t) { return (static_cast<std::size_t>(t[0] - 1) * n + (t[1] - 1)) * n + (t[2] - 1); };

  for (Vertex x = 0; x < m; ++x)
    for (Vertex y = x + 1; y < m; ++y) {
      const Colour a = g.at(x, y);
      for (Vertex z = y + 1; z < m; ++z) {
        const Colour b = g.at(x, z), c = g.at(y, z);
        if (sig.forbids(distinct_count(a, b, c))) {
          ++r.forbidden_count;
          if (r.forbidden_witnesses.size() < max_witnesses)
            r.forbidden_witnesses.push_back({{x, y, z}, {a, b, c}});
        }
        realised[ms_index(sorted_triple(a, b, c))] = 1;
      }
    }

  if (level != Level::feeble) {
    for (const auto& t : required_multisets(sig))
      if (!realised[ms_index(t)]) {
        ++r.missing_count;
        if (r.missing_required.size() < max_witnesses) r.missing_required.push_back(t);
      }
  }

  if (level == Level::strong) {
    // witness[a*n+b] marks that some z has xz = a, zy = b.
    std::vector<char> witness(static_cast<std::size_t>(n) * n);
    for (Vertex x = 0; x < m; ++x)
      for (Vertex y = x + 1; y < m; ++y) {
        std::fill(witness.begin(), witness.end(), 0);
        for (Vertex z = 0; z < m; ++z)
          if (z != x && z != y) witness[(g.at(x, z) - 1) * n + (g.at(z, y) - 1)] = 1;
        const Colour c = g.at(x, y);
        for (int a = 1; a <= n; ++a)
          for (int b = 1; b <= n; ++b) {
            if (!sig.allows(distinct_count(static_cast<Colour>(a), static_cast<Colour>(b), c))) continue;
            if (witness[(a - 1) * n + (b - 1)]) continue;
            ++r.strong_failure_count;
            if (r.strong_failures.size() < max_witnesses) r.strong_failures.push_back({x, y, {a, b, c}});
          }
      }
  }

  r.passed = r.surjective && r.forbidden_count == 0 && r.missing_count == 0 && r.strong_failure_count == 0;
  return r;
}

inline bool passes(const EdgeColouring& g, const Signature& sig, Level level) {
  return verify(g, sig, level).passed;
}

// Adds one copy v' of v per colour d missing at v, with colour(v', v) = d and
// colour(v', w) = colour(v, w) otherwise. Copies are added in increasing d;
// a later copy sees an earlier copy v'_d through colour d.
inline EdgeColouring saturate(const EdgeColouring& g, Vertex v, const Signature& sig) {
  if (sig.mask() != 0b010) throw std::invalid_argument("saturation is defined for S = {2} only");
  if (g.colour_count() != sig.n()) throw std::invalid_argument("colouring and signature disagree on n");
  if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  const int m = g.vertex_count();
  for (Vertex x = 0; x < m; ++x)
    for (Vertex y = x + 1; y < m; ++y)
      for (Vertex z = y + 1; z < m; ++z)
        if (sig.forbids(distinct_count(g.at(x, y), g.at(x, z), g.at(y, z))))
          throw std::invalid_argument("colouring already contains a forbidden triangle");

  std::uint64_t present = 0;
  for (Vertex w = 0; w < m; ++w)
    if (w != v) present |= std::uint64_t{1} << (g.at(v, w) - 1);
  std::vector<Colour> missing;
  for (int d = 1; d <= g.colour_count(); ++d)
    if (!((present >> (d - 1)) & 1u)) missing.push_back(static_cast<Colour>(d));
  if (missing.empty()) return g;

  const int total = m + static_cast<int>(missing.size());
  // Row of colours seen from v, extended as copies are added.
  std::vector<Colour> from_v(total, 0);
  for (Vertex w = 0; w < m; ++w)
    if (w != v) from_v[w] = g.at(v, w);
  for (std::size_t k = 0; k < missing.size(); ++k) from_v[m + k] = missing[k];

  return EdgeColouring::from_function(total, g.colour_count(), [&](Vertex i, Vertex j) -> Colour {
    if (j < m) return g.at(i, j);
    // j is the copy for missing[j - m]; it mirrors v except on the edge to v.
    if (i == v) return missing[j - m];
    return from_v[i];
  });
}

namespace detail {

// Exhaustive search for the lexicographically least first-occurrence
// normalised edge string over all vertex orderings. Unplaced twins (vertices
// u, w with colour(u,x) = colour(w,x) for all other x) yield identical
// subtrees, so only the least member of each twin class is branched on.
class CanonSearch {
 public:
  explicit CanonSearch(const EdgeColouring& g) : g_(g), m_(g.vertex_count()), twin_rep_(m_) {
    for (Vertex v = 0; v < m_; ++v) {
      twin_rep_[v] = v;
      for (Vertex u = 0; u < v; ++u)
        if (twins(u, v)) {
          twin_rep_[v] = twin_rep_[u];
          break;
        }
    }
  }

  // Least string and one ordering (order[k] = original vertex at position k).
  std::vector<Colour> minimum(std::vector<Vertex>* order_out = nullptr) {
    mode_ = Mode::minimum;
    best_.assign(edge_count(m_), std::numeric_limits<Colour>::max());
    have_best_ = false;
    run();
    if (order_out) *order_out = best_order_;
    return best_;
  }

  // True iff some ordering beats the identity ordering's normalised string.
  bool has_smaller() {
    mode_ = Mode::beat_target;
    best_ = normalised_identity();
    have_best_ = true;
    found_smaller_ = false;
    run();
    return found_smaller_;
  }

  std::vector<Colour> normalised_identity() const {
    std::vector<Colour> map(g_.colour_count() + 1, 0);
    Colour next = 1;
    std::vector<Colour> out(edge_count(m_));
    for (std::size_t e = 0; e < out.size(); ++e) {
      Colour c = g_.edge_colours()[e];
      if (!map[c]) map[c] = next++;
      out[e] = map[c];
    }
    return out;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  enum class Mode { minimum, beat_target };

  bool twins(Vertex u, Vertex w) const {
    for (Vertex x = 0; x < m_; ++x)
      if (x != u && x != w && g_.at(u, x) != g_.at(w, x)) return false;
    return true;
  }

  void run() {
    nodes_ = 0;
    placed_.assign(m_, 0);
    used_.assign(m_, 0);
    cur_.assign(edge_count(m_), 0);
    std::vector<Colour> map(g_.colour_count() + 1, 0);
    if (m_ == 0) {
      if (mode_ == Mode::minimum) best_.clear();
      return;
    }
    dfs(0, map, 1, mode_ == Mode::beat_target || have_best_);
  }

  // tight: cur_[0..offset(depth)) equals best_ there.
  // Returns true when the search should stop entirely.
  bool dfs(int depth, std::vector<Colour>& map, Colour next, bool tight) {
    ++nodes_;
    if (depth == m_) {
      if (mode_ == Mode::minimum && !tight) {
        best_ = cur_;
        best_order_.assign(placed_.begin(), placed_.end());
        have_best_ = true;
        ++version_;
      }
      return false;
    }
    const std::size_t off = edge_count(depth);
    // Candidate columns.
    std::vector<Vertex> cands;
    std::vector<Colour> best_col;
    for (Vertex v = 0; v < m_; ++v) {
      if (used_[v]) continue;
      if (twin_rep_[v] != v) {
        bool rep_free = false;
        for (Vertex u = twin_rep_[v]; u < v; ++u)
          if (!used_[u] && twin_rep_[u] == twin_rep_[v]) { rep_free = true; break; }
        if (rep_free) continue;
      }
      std::vector<Colour> col(depth);
      std::vector<Colour> tmp_seen;
      Colour nx = next;
      for (int t = 0; t < depth; ++t) {
        Colour c = g_.at(placed_[t], v);
        Colour mc = map[c];
        if (!mc) {
          mc = nx++;
          map[c] = mc;
          tmp_seen.push_back(c);
        }
        col[t] = mc;
      }
      for (Colour c : tmp_seen) map[c] = 0;
      if (cands.empty() || col < best_col) {
        cands.assign(1, v);
        best_col = col;
      } else if (col == best_col) {
        cands.push_back(v);
      }
    }

    const std::uint64_t version_at_entry = version_;
    for (Vertex v : cands) {
      bool t = tight;
      if (version_ != version_at_entry) t = true;  // best_ now extends this prefix
      if (t) {
        int cmp = 0;
        for (int i = 0; i < depth && cmp == 0; ++i)
          if (best_col[i] != best_[off + i]) cmp = best_col[i] < best_[off + i] ? -1 : 1;
        if (cmp > 0) return false;  // every candidate here has the same column
        if (cmp < 0) {
          if (mode_ == Mode::beat_target) {
            found_smaller_ = true;
            return true;
          }
          t = false;
        }
      }
      // Apply v.
      std::vector<Colour> added;
      Colour nx = next;
      for (int i = 0; i < depth; ++i) {
        Colour c = g_.at(placed_[i], v);
        if (!map[c]) {
          map[c] = nx++;
          added.push_back(c);
        }
        cur_[off + i] = map[c];
      }
      placed_[depth] = v;
      used_[v] = 1;
      bool stop = dfs(depth + 1, map, nx, t);
      used_[v] = 0;
      for (Colour c : added) map[c] = 0;
      if (stop) return true;
    }
    return false;
  }

  const EdgeColouring& g_;
  int m_;
  std::vector<Vertex> twin_rep_;
  Mode mode_ = Mode::minimum;
  std::vector<Colour> best_;
  std::vector<Vertex> best_order_;
  bool have_best_ = false;
  bool found_smaller_ = false;
  std::uint64_t version_ = 0;
  std::vector<Vertex> placed_;
  std::vector<char> used_;
  std::vector<Colour> cur_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

// Least colouring, in column-major edge order, over all vertex permutations
// combined with all colour permutations. Colour permutations are absorbed by
// first-occurrence normalisation: colour 1 is the first colour met, and so on.
inline EdgeColouring canonical_form(const EdgeColouring& g) {
  detail::CanonSearch search(g);
  return EdgeColouring(g.vertex_count(), g.colour_count(), search.minimum());
}

// Same, returning the ordering: canonical vertex k is original order[k].
inline EdgeColouring canonical_form(const EdgeColouring& g, std::vector<Vertex>& order) {
  detail::CanonSearch search(g);
  return EdgeColouring(g.vertex_count(), g.colour_count(), search.minimum(&order));
}

inline bool is_canonical(const EdgeColouring& g) {
  detail::CanonSearch search(g);
  return search.normalised_identity() == g.edge_colours() && !search.has_smaller();
}

inline bool are_isomorphic(const EdgeColouring& a, const EdgeColouring& b) {
  if (a.vertex_count() != b.vertex_count() || a.colour_count() != b.colour_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace chromatic
