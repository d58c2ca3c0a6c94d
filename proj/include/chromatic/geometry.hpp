#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/colouring.hpp"

namespace chromatic {

using Point = int;
using Line = std::vector<Point>;  // sorted, no duplicates

struct LinearSpace {
  int point_count = 0;
  std::vector<Line> lines;
};

// Partition of line indices into parallel classes.
struct Parallelism {
  std::vector<std::vector<int>> blocks;
};

struct Geometry {
  LinearSpace space;
  Parallelism parallelism;
};

// Axiom failures.
struct PairCoverage {
  Point p, q;
  int line_count;  // 0 violates LS1, >= 2 violates LS2
};
struct LineMeet {
  int line_a, line_b;
  int common;  // >= 2 points in common
};

struct SpaceReport {
  bool ls1 = true, ls2 = true, ls3 = true;
  bool well_formed = true;  // points in range, lines sorted and duplicate-free
  std::vector<PairCoverage> uncovered;      // LS1
  std::vector<LineMeet> double_meets;       // LS2
  std::vector<int> short_lines;             // LS3
  bool valid() const { return well_formed && ls1 && ls2 && ls3; }
};

inline SpaceReport validate_space(const LinearSpace& sp) {
  SpaceReport r;
  const int P = sp.point_count;
  for (const auto& line : sp.lines) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] < 0 || line[k] >= P) r.well_formed = false;
      if (k > 0 && line[k] <= line[k - 1]) r.well_formed = false;
    }
  }
  if (!r.well_formed) return r;
  for (std::size_t l = 0; l < sp.lines.size(); ++l)
    if (sp.lines[l].size() < 2) {
      r.ls3 = false;
      if (r.short_lines.size() < max_witnesses) r.short_lines.push_back(static_cast<int>(l));
    }
  std::vector<int> cover(static_cast<std::size_t>(P) * P, 0);
  for (const auto& line : sp.lines)
    for (std::size_t a = 0; a < line.size(); ++a)
      for (std::size_t b = a + 1; b < line.size(); ++b) ++cover[line[a] * P + line[b]];
  for (Point p = 0; p < P; ++p)
    for (Point q = p + 1; q < P; ++q) {
      int c = cover[p * P + q];
      if (c == 0) {
        r.ls1 = false;
        if (r.uncovered.size() < max_witnesses) r.uncovered.push_back({p, q, 0});
      }
    }
  for (std::size_t a = 0; a < sp.lines.size(); ++a)
    for (std::size_t b = a + 1; b < sp.lines.size(); ++b) {
      std::vector<Point> common;
      std::set_intersection(sp.lines[a].begin(), sp.lines[a].end(), sp.lines[b].begin(), sp.lines[b].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) {
        r.ls2 = false;
        if (r.double_meets.size() < max_witnesses)
          r.double_meets.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(common.size())});
      }
    }
  return r;
}

struct ParallelismReport {
  bool partition = true;  // every line in exactly one block, no empty block
  bool non_crossing = true;
  std::vector<int> misplaced_lines;                 // in zero or several blocks
  std::vector<std::array<int, 3>> crossings;        // (block, line, line) meeting
  bool valid() const { return partition && non_crossing; }
};

inline ParallelismReport validate_parallelism(const LinearSpace& sp, const Parallelism& pw) {
  ParallelismReport r;
  std::vector<int> seen(sp.lines.size(), 0);
  for (const auto& block : pw.blocks) {
    if (block.empty()) r.partition = false;
    for (int l : block) {
      if (l < 0 || l >= static_cast<int>(sp.lines.size())) {
        r.partition = false;
        continue;
      }
      ++seen[l];
    }
  }
  for (std::size_t l = 0; l < seen.size(); ++l)
    if (seen[l] != 1) {
      r.partition = false;
      if (r.misplaced_lines.size() < max_witnesses) r.misplaced_lines.push_back(static_cast<int>(l));
    }
  for (std::size_t b = 0; b < pw.blocks.size(); ++b) {
    const auto& block = pw.blocks[b];
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        int la = block[i], lb = block[j];
        if (la < 0 || lb < 0 || la >= static_cast<int>(sp.lines.size()) || lb >= static_cast<int>(sp.lines.size()))
          continue;
        std::vector<Point> common;
        std::set_intersection(sp.lines[la].begin(), sp.lines[la].end(), sp.lines[lb].begin(), sp.lines[lb].end(),
                              std::back_inserter(common));
        if (!common.empty()) {
          r.non_crossing = false;
          if (r.crossings.size() < max_witnesses) r.crossings.push_back({static_cast<int>(b), la, lb});
        }
      }
  }
  return r;
}

inline void require_valid(const Geometry& geo) {
  if (!validate_space(geo.space).valid()) throw std::invalid_argument("not a linear space");
  if (!validate_parallelism(geo.space, geo.parallelism).valid()) throw std::invalid_argument("not a parallelism");
}

// Block index (0-based) of the line through each pair of points; -1 on the
// diagonal. Requires a valid geometry.
inline std::vector<int> pair_blocks(const Geometry& geo) {
  const int P = geo.space.point_count;
  std::vector<int> block_of_line(geo.space.lines.size(), -1);
  for (std::size_t b = 0; b < geo.parallelism.blocks.size(); ++b)
    for (int l : geo.parallelism.blocks[b]) block_of_line[l] = static_cast<int>(b);
  std::vector<int> out(static_cast<std::size_t>(P) * P, -1);
  for (std::size_t l = 0; l < geo.space.lines.size(); ++l) {
    const auto& line = geo.space.lines[l];
    for (Point p : line)
      for (Point q : line)
        if (p != q) out[p * P + q] = block_of_line[l];
  }
  return out;
}

struct Ls4Report {
  bool passed = true;
  std::vector<int> failing_blocks;  // blocks whose lines all have 2 points
};

// LS4: every parallel class contains a line with at least three points.
inline Ls4Report check_ls4(const Geometry& geo) {
  require_valid(geo);
  Ls4Report r;
  for (std::size_t b = 0; b < geo.parallelism.blocks.size(); ++b) {
    bool ok = false;
    for (int l : geo.parallelism.blocks[b])
      if (geo.space.lines[l].size() >= 3) ok = true;
    if (!ok) {
      r.passed = false;
      r.failing_blocks.push_back(static_cast<int>(b));
    }
  }
  return r;
}

struct Ls5Witness {
  std::array<int, 3> blocks;  // d1 < d2 < d3
  std::array<Point, 3> points;  // line(p1p2) in d1, line(p2p3) in d2, line(p3p1) in d3
};

struct Ls5Report {
  bool passed = true;
  std::vector<Ls5Witness> witnesses;
  std::vector<std::array<int, 3>> failures;
};

// LS5 over triples of distinct parallel classes. Three points joined
// pairwise by lines of three different classes are automatically in general
// position. Monochromatic configurations are LS4's concern.
inline Ls5Report check_ls5(const Geometry& geo) {
  require_valid(geo);
  const int P = geo.space.point_count;
  const int B = static_cast<int>(geo.parallelism.blocks.size());
  const auto pb = pair_blocks(geo);
  auto key = [B](int a, int b, int c) { return (static_cast<std::size_t>(a) * B + b) * B + c; };
  std::vector<std::array<Point, 3>> found(static_cast<std::size_t>(B) * B * B, {-1, -1, -1});
  for (Point x = 0; x < P; ++x)
    for (Point y = x + 1; y < P; ++y)
      for (Point z = y + 1; z < P; ++z) {
        int bxy = pb[x * P + y], byz = pb[y * P + z], bzx = pb[z * P + x];
        if (bxy == byz || byz == bzx || bxy == bzx) continue;
        // Orient so the first side has the least class, then the second side.
        std::array<std::pair<int, std::array<Point, 3>>, 3> rot{{
            {bxy, {x, y, z}},
            {byz, {y, z, x}},
            {bzx, {z, x, y}},
        }};
        auto best = *std::min_element(rot.begin(), rot.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::array<Point, 3> pts = best.second;
        int d1 = pb[pts[0] * P + pts[1]], d2 = pb[pts[1] * P + pts[2]], d3 = pb[pts[2] * P + pts[0]];
        if (d2 > d3) {
          // reverse orientation: p1 <-> p2 keeps side p1p2 and swaps the others
          std::swap(pts[0], pts[1]);
          d2 = pb[pts[1] * P + pts[2]];
          d3 = pb[pts[2] * P + pts[0]];
        }
        auto& slot = found[key(d1, d2, d3)];
        if (slot[0] < 0) slot = pts;
      }
  Ls5Report r;
  for (int a = 0; a < B; ++a)
    for (int b = a + 1; b < B; ++b)
      for (int c = b + 1; c < B; ++c) {
        const auto& slot = found[key(a, b, c)];
        if (slot[0] < 0) {
          r.passed = false;
          r.failures.push_back({a, b, c});
        } else {
          r.witnesses.push_back({{a, b, c}, slot});
        }
      }
  return r;
}

// Points p_0..p_{n-1}; the long line {p_1..p_{n-1}} first, then {p_0,p_i};
// each line is its own parallel class.
inline Geometry near_pencil(int n) {
  if (n < 3) throw std::invalid_argument("near pencil needs n >= 3");
  Geometry g;
  g.space.point_count = n;
  Line big;
  for (Point p = 1; p < n; ++p) big.push_back(p);
  g.space.lines.push_back(big);
  for (Point p = 1; p < n; ++p) g.space.lines.push_back({0, p});
  for (int l = 0; l < n; ++l) g.parallelism.blocks.push_back({l});
  return g;
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Smallest prime dividing q when q is a prime power, otherwise 0.
inline int prime_power_base(int q) {
  if (q < 2) return 0;
  int p = 2;
  while (q % p != 0) ++p;
  int r = q;
  while (r % p == 0) r /= p;
  return r == 1 ? p : 0;
}

// GF(q), q = p^e. Elements are 0..q-1, read as base-p coefficient vectors of
// polynomials in x; multiplication is modulo the first monic polynomial of
// degree e (in the order of its low coefficients) for which x has order q-1.
// For prime q this is ordinary arithmetic mod q.
class FiniteField {
 public:
  explicit FiniteField(int q) : q_(q), p_(prime_power_base(q)) {
    if (p_ == 0) throw std::invalid_argument("finite fields exist only for prime power orders");
    while (pow_int(p_, e_) < q_) ++e_;
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        int sum = 0;
        for (int d = 0, scale = 1; d < e_; ++d, scale *= p_) sum += ((a / scale % p_ + b / scale % p_) % p_) * scale;
        add_[a * q_ + b] = sum;
      }
    if (e_ == 1) {
      mul_.resize(static_cast<std::size_t>(q_) * q_);
      for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) mul_[a * q_ + b] = a * b % q_;
      return;
    }
    for (int low = 0; low < q_; ++low) {
      build_mul(low);
      if (primitive_x()) return;
    }
    throw std::logic_error("no primitive polynomial found");
  }

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }

 private:
  static int pow_int(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  // Product of polynomials a and b modulo x^e + (low read as coefficients).
  void build_mul(int low) {
    std::vector<int> reduce(e_);  // x^e = -low
    for (int d = 0, scale = 1; d < e_; ++d, scale *= p_) reduce[d] = (p_ - low / scale % p_) % p_;
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        std::vector<int> prod(2 * e_ - 1, 0);
        for (int i = 0, si = 1; i < e_; ++i, si *= p_)
          for (int j = 0, sj = 1; j < e_; ++j, sj *= p_) prod[i + j] = (prod[i + j] + (a / si % p_) * (b / sj % p_)) % p_;
        for (int top = 2 * e_ - 2; top >= e_; --top) {
          const int c = prod[top];
          prod[top] = 0;
          for (int d = 0; d < e_; ++d) prod[top - e_ + d] = (prod[top - e_ + d] + c * reduce[d]) % p_;
        }
        int v = 0;
        for (int d = e_ - 1; d >= 0; --d) v = v * p_ + prod[d];
        mul_[a * q_ + b] = v;
      }
  }

  bool primitive_x() const {
    const int x = p_;  // the polynomial x
    int power = x;
    for (int k = 1; k < q_ - 1; ++k) {
      if (power == 1 || power == 0) return false;
      power = mul(power, x);
    }
    return power == 1;
  }

  int q_, p_, e_ = 1;
  std::vector<int> add_, mul_;
};

// AG(2,q) for a prime power q: point (x,y) has index x*q + y. Blocks: slopes
// 0..q-1 (lines y = mx + b in order of b), then the verticals x = c.
inline Geometry affine_plane(int q) {
  const FiniteField f(q);
  Geometry g;
  g.space.point_count = q * q;
  for (int slope = 0; slope <= q; ++slope) {
    std::vector<int> block;
    for (int b = 0; b < q; ++b) {
      Line line;
      for (int t = 0; t < q; ++t) line.push_back(slope == q ? b * q + t : t * q + f.add(f.mul(slope, t), b));
      std::sort(line.begin(), line.end());
      block.push_back(static_cast<int>(g.space.lines.size()));
      g.space.lines.push_back(std::move(line));
    }
    g.parallelism.blocks.push_back(std::move(block));
  }
  return g;
}

// Order of an affine plane given as a geometry: q^2 points, q^2 + q lines of
// q points each, q+1 classes of q lines. Returns 0 if the shape is wrong.
inline int affine_order(const Geometry& geo) {
  int q = 0;
  while (q * q < geo.space.point_count) ++q;
  if (q < 2 || q * q != geo.space.point_count) return 0;
  if (static_cast<int>(geo.space.lines.size()) != q * q + q) return 0;
  for (const auto& l : geo.space.lines)
    if (static_cast<int>(l.size()) != q) return 0;
  if (static_cast<int>(geo.parallelism.blocks.size()) != q + 1) return 0;
  for (const auto& b : geo.parallelism.blocks)
    if (static_cast<int>(b.size()) != q) return 0;
  if (!validate_space(geo.space).valid() || !validate_parallelism(geo.space, geo.parallelism).valid()) return 0;
  return q;
}

// Deletes the point set `dropped` (|dropped| <= q-2) from an affine plane of
// order q >= 3. Lines through exactly one deleted point d form the new class
// of d; all other lines stay in their old class. Old classes come first in
// their original order, then new classes in the order of `dropped`. Surviving
// points are renumbered in increasing order.
inline Geometry drop_points(const Geometry& plane, const std::vector<Point>& dropped) {
  const int q = affine_order(plane);
  if (q == 0) throw std::invalid_argument("drop_points needs an affine plane");
  if (q < 3) throw std::invalid_argument("drop_points needs order q >= 3");
  const int k = static_cast<int>(dropped.size());
  if (k > q - 2) throw std::invalid_argument("at most q-2 points may be dropped");
  std::vector<int> slot(plane.space.point_count, -1);
  for (int i = 0; i < k; ++i) {
    Point d = dropped[i];
    if (d < 0 || d >= plane.space.point_count) throw std::invalid_argument("dropped point out of range");
    if (slot[d] >= 0) throw std::invalid_argument("dropped points must be distinct");
    slot[d] = i;
  }
  std::vector<Point> renumber(plane.space.point_count, -1);
  int next = 0;
  for (Point p = 0; p < plane.space.point_count; ++p)
    if (slot[p] < 0) renumber[p] = next++;

  Geometry out;
  out.space.point_count = next;
  const int old_blocks = static_cast<int>(plane.parallelism.blocks.size());
  std::vector<std::vector<int>> blocks(old_blocks + k);
  for (int b = 0; b < old_blocks; ++b)
    for (int l : plane.parallelism.blocks[b]) {
      const auto& line = plane.space.lines[l];
      Line trimmed;
      int hits = 0, last_hit = -1;
      for (Point p : line) {
        if (slot[p] >= 0) {
          ++hits;
          last_hit = slot[p];
        } else {
          trimmed.push_back(renumber[p]);
        }
      }
      int target = hits == 1 ? old_blocks + last_hit : b;
      blocks[target].push_back(static_cast<int>(out.space.lines.size()));
      out.space.lines.push_back(std::move(trimmed));
    }
  out.parallelism.blocks = std::move(blocks);
  return out;
}

// colour(p,q) = 1 + index of the class containing the line through p and q.
inline EdgeColouring colouring_from_parallelism(const Geometry& geo) {
  require_valid(geo);
  const int P = geo.space.point_count;
  const int n = static_cast<int>(geo.parallelism.blocks.size());
  const auto pb = pair_blocks(geo);
  return EdgeColouring::from_function(P, n, [&](Vertex i, Vertex j) { return 1 + pb[i * P + j]; });
}

// Inverse direction: lines are the maximal monochromatic cliques, classes are
// the colours. Requires no dichromatic triangle and surjectivity.
inline Geometry linear_space_from_colouring(const EdgeColouring& g) {
  const int n = g.colour_count();
  if (!verify(g, Signature({1, 3}, n), Level::feeble).passed)
    throw std::invalid_argument("colouring is not a feeble representation for S = {1,3}");
  const int m = g.vertex_count();
  Geometry geo;
  geo.space.point_count = m;
  geo.parallelism.blocks.resize(n);
  for (int c = 1; c <= n; ++c) {
    std::vector<char> taken(m, 0);
    for (Vertex v = 0; v < m; ++v) {
      if (taken[v]) continue;
      Line line{v};
      for (Vertex w = v + 1; w < m; ++w)
        if (g.at(v, w) == c) line.push_back(w);
      if (line.size() < 2) continue;
      for (Point p : line) taken[p] = 1;
      geo.parallelism.blocks[c - 1].push_back(static_cast<int>(geo.space.lines.size()));
      geo.space.lines.push_back(std::move(line));
    }
  }
  return geo;
}

// Identity on points; lines compared as sets, classes matched as sets of lines.
inline bool same_geometry(const Geometry& a, const Geometry& b) {
  if (a.space.point_count != b.space.point_count) return false;
  auto classes = [](const Geometry& g) {
    std::set<std::set<Line>> out;
    for (const auto& block : g.parallelism.blocks) {
      std::set<Line> lines;
      for (int l : block) lines.insert(g.space.lines[l]);
      out.insert(lines);
    }
    return out;
  };
  std::multiset<Line> la(a.space.lines.begin(), a.space.lines.end());
  std::multiset<Line> lb(b.space.lines.begin(), b.space.lines.end());
  return la == lb && classes(a) == classes(b) &&
         a.parallelism.blocks.size() == b.parallelism.blocks.size();
}

// Point bijection carrying lines to lines and classes to classes. Feeble
// {1,3} colourings determine the geometry, so this reduces to colouring
// isomorphism up to vertex and colour relabelling.
inline bool geometries_isomorphic(const Geometry& a, const Geometry& b) {
  if (same_geometry(a, b)) return true;
  if (a.space.point_count != b.space.point_count) return false;
  if (a.parallelism.blocks.size() != b.parallelism.blocks.size()) return false;
  if (a.space.lines.size() != b.space.lines.size()) return false;
  return are_isomorphic(colouring_from_parallelism(a), colouring_from_parallelism(b));
}

}  // namespace chromatic
