#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromatic/colouring.hpp"

namespace chromatic {

// Cayley table on {0..n-1}. Validity (Latin, commutative, idempotent) is not
// enforced on construction; see validate().
class Quasigroup {
 public:
  Quasigroup() = default;
  Quasigroup(int order, std::vector<int> table) : order_(order), table_(std::move(table)) {
    if (order < 1) throw std::invalid_argument("quasigroup order must be positive");
    if (table_.size() != static_cast<std::size_t>(order) * order)
      throw std::invalid_argument("Cayley table must have order^2 entries");
    for (int v : table_)
      if (v < 0 || v >= order) throw std::invalid_argument("Cayley table entry out of range");
  }

  static Quasigroup from_rows(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> t;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("Cayley table must be square");
      t.insert(t.end(), row.begin(), row.end());
    }
    return Quasigroup(n, std::move(t));
  }

  int order() const { return order_; }
  int operator()(int i, int j) const { return table_[static_cast<std::size_t>(i) * order_ + j]; }
  const std::vector<int>& table() const { return table_; }

  // Image under the bijection perm: perm[i]·perm[j] = perm[i·j].
  Quasigroup relabelled(const std::vector<int>& perm) const {
    std::vector<int> t(table_.size());
    for (int i = 0; i < order_; ++i)
      for (int j = 0; j < order_; ++j) t[perm[i] * order_ + perm[j]] = perm[(*this)(i, j)];
    return Quasigroup(order_, std::move(t));
  }

  friend bool operator==(const Quasigroup&, const Quasigroup&) = default;

 private:
  int order_ = 0;
  std::vector<int> table_;
};

// i·j = (i+j)/2 in Z_n, n odd.
inline Quasigroup standard_qn(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("standard quasigroup needs odd order >= 3");
  const int half = (n + 1) / 2;  // inverse of 2 mod n
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = static_cast<int>((static_cast<long long>(i + j) * half) % n);
  return Quasigroup(n, std::move(t));
}

struct LatinViolation {
  bool in_row;  // row i (else column i) repeats value
  int index;
  int value;
};

struct CellViolation {
  int i, j;
};

struct QuasigroupReport {
  bool latin = true;
  bool commutative = true;
  bool idempotent = true;
  std::vector<LatinViolation> latin_violations;
  std::vector<CellViolation> commutativity_violations;  // i < j with i·j != j·i
  std::vector<int> idempotency_violations;              // i with i·i != i
  bool valid() const { return latin && commutative && idempotent; }
};

inline QuasigroupReport validate(const Quasigroup& q) {
  QuasigroupReport r;
  const int n = q.order();
  for (int line = 0; line < n; ++line) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int k = 0; k < n; ++k) {
      int rv = q(line, k), cv = q(k, line);
      if (row_seen[rv]++ == 1 && r.latin_violations.size() < max_witnesses)
        r.latin_violations.push_back({true, line, rv});
      if (col_seen[cv]++ == 1 && r.latin_violations.size() < max_witnesses)
        r.latin_violations.push_back({false, line, cv});
    }
    for (int v = 0; v < n; ++v)
      if (row_seen[v] != 1 || col_seen[v] != 1) r.latin = false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      if (q(i, j) != q(j, i)) {
        r.commutative = false;
        if (r.commutativity_violations.size() < max_witnesses) r.commutativity_violations.push_back({i, j});
      }
    if (q(i, i) != i) {
      r.idempotent = false;
      if (r.idempotency_violations.size() < max_witnesses) r.idempotency_violations.push_back(i);
    }
  }
  return r;
}

struct CycleWitness {
  std::array<int, 3> target;  // x < y < z
  std::array<int, 3> uvw;     // u·v = x, v·w = y, w·u = z
};

struct ThreeCycleResult {
  bool holds = true;
  std::vector<CycleWitness> witnesses;      // one per realised triple, lexicographically least (u,v,w)
  std::vector<std::array<int, 3>> failures;  // triples with no witness
};

// For every x < y < z, looks for u,v,w with u·v = x, v·w = y, w·u = z.
// Commutativity makes the ordered and unordered versions equivalent: a
// witness for one ordering of {x,y,z} rotates/reflects into all others.
inline ThreeCycleResult three_cycle_condition(const Quasigroup& q) {
  if (!validate(q).valid()) throw std::invalid_argument("three-cycle condition needs a valid quasigroup");
  const int n = q.order();
  auto key = [n](int x, int y, int z) { return (static_cast<std::size_t>(x) * n + y) * n + z; };
  std::vector<int> found(static_cast<std::size_t>(n) * n * n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        int x = q(u, v), y = q(v, w), z = q(w, u);
        if (x < y && y < z && found[key(x, y, z)] < 0) found[key(x, y, z)] = static_cast<int>(key(u, v, w));
      }
  ThreeCycleResult r;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        int code = found[key(x, y, z)];
        if (code < 0) {
          r.holds = false;
          r.failures.push_back({x, y, z});
        } else {
          r.witnesses.push_back({{x, y, z}, {code / (n * n), (code / n) % n, code % n}});
        }
      }
  return r;
}

// K_n with colour(i,j) = 1 + i·j.
inline EdgeColouring lambda1(const Quasigroup& q) {
  if (!validate(q).valid()) throw std::invalid_argument("lambda1 needs a commutative idempotent quasigroup");
  return EdgeColouring::from_function(q.order(), q.order(), [&](Vertex i, Vertex j) { return 1 + q(i, j); });
}

// lambda1 plus vertex n joined to i by colour 1 + i.
inline EdgeColouring lambda2(const Quasigroup& q) {
  if (!validate(q).valid()) throw std::invalid_argument("lambda2 needs a commutative idempotent quasigroup");
  const int n = q.order();
  return EdgeColouring::from_function(n + 1, n, [&](Vertex i, Vertex j) { return j == n ? 1 + i : 1 + q(i, j); });
}

// Reads a quasigroup off a qualitative representation of the {3} algebra on
// n+1 vertices. The last vertex plays the apex; vertex v is renumbered by the
// colour of its edge to the apex.
inline Quasigroup quasigroup_from_colouring(const EdgeColouring& g) {
  const int n = g.colour_count();
  if (g.vertex_count() != n + 1) throw std::invalid_argument("expected a colouring on n+1 vertices");
  if (!verify(g, Signature({3}, n), Level::qualitative).passed)
    throw std::invalid_argument("colouring is not a qualitative representation for S = {3}");
  const Vertex apex = n;
  std::vector<Vertex> by_colour(n);
  for (Vertex v = 0; v < n; ++v) by_colour[g.at(apex, v) - 1] = v;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = i == j ? i : g.at(by_colour[i], by_colour[j]) - 1;
  return Quasigroup(n, std::move(t));
}

// Bijection f with f(i·j) = f(i)·f(j), if any.
inline std::optional<std::vector<int>> find_isomorphism(const Quasigroup& a, const Quasigroup& b) {
  const int n = a.order();
  if (b.order() != n) return std::nullopt;
  std::vector<int> f(n, -1), inv(n, -1);
  auto consistent = [&](int upto) {
    for (int i = 0; i <= upto; ++i)
      for (int j = 0; j <= upto; ++j) {
        int p = a(i, j);
        if (f[p] >= 0 && b(f[i], f[j]) != f[p]) return false;
        if (f[p] < 0 && inv[b(f[i], f[j])] >= 0) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int t = 0; t < n; ++t) {
      if (inv[t] >= 0) continue;
      f[i] = t;
      inv[t] = i;
      if (consistent(i) && self(self, i + 1)) return true;
      f[i] = -1;
      inv[t] = -1;
    }
    return false;
  };
  if (rec(rec, 0)) return f;
  return std::nullopt;
}

}  // namespace chromatic
