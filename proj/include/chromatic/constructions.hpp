#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chromatic/colouring.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/quasigroup.hpp"

namespace chromatic {

// s_n(x) = ((x - 1) mod n) + 1 with a non-negative remainder.
inline int cycle_colour(int n, long long x) {
  long long r = (x - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r) + 1;
}

// Walecki-style colouring of K_{2n}: a zigzag Hamiltonian path rotated
// through n colours. Vertex u_t is stored as t-1; the edge (u_i, u_{i+s})
// gets colour s_n(ceil((s+1)/2) + i - 1).
inline EdgeColouring walecki(int n) {
  if (n < 1) throw std::invalid_argument("walecki needs n >= 1");
  const int m = 2 * n;
  return EdgeColouring::from_function(m, n, [&](Vertex a, Vertex b) {
    const int i = a + 1;
    const int s = b - a;  // 1..2n-1
    return cycle_colour(n, (s + 2) / 2 + i - 1);
  });
}

// Triangle of walecki(n) whose sides carry colours i, j, k:
//   (result[0], result[1]) has colour i,
//   (result[0], result[2]) has colour j,
//   (result[1], result[2]) has colour k.
// Vertices are 0-based (u_t is t-1).
inline std::array<Vertex, 3> walecki_witness(int n, int i, int j, int k) {
  if (n < 1) throw std::invalid_argument("walecki needs n >= 1");
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("walecki_witness needs 1 <= i < j <= n");
  if (k < 1 || k > n) throw std::invalid_argument("colour k out of range");
  const int two_n = 2 * n;
  const int l = cycle_colour(two_n, i + j - k);
  int s, t;
  if (k != i) {
    s = 2 * k - 2 * j + 1;
    t = 2 * k - 2 * i;
  } else {
    s = 2 * k - 2 * j;
    t = 2 * k - 2 * i + 1;
  }
  return {l - 1, cycle_colour(two_n, l + s) - 1, cycle_colour(two_n, l + t) - 1};
}

// 5-cycle in colour 1, diagonals in colour 2.
inline EdgeColouring pentagon() {
  return EdgeColouring::from_function(5, 2, [](Vertex i, Vertex j) { return (j - i == 1 || j - i == 4) ? 1 : 2; });
}

// v_0..v_n with colour(v_i, v_j) = j for i < j.
inline EdgeColouring chain_colouring(int n) {
  if (n < 1) throw std::invalid_argument("chain colouring needs n >= 1");
  return EdgeColouring::from_function(n + 1, n, [](Vertex, Vertex j) { return j; });
}

// K_4 split into its three perfect matchings.
inline EdgeColouring k4_matchings() {
  return EdgeColouring::from_function(4, 3, [](Vertex i, Vertex j) { return (i ^ j); });
}

// One triangle per allowed colour multiset [a,b,c] (sides xy = a, xz = b,
// yz = c), edges between different triangles in `filler`.
inline EdgeColouring disjoint_triangles(const Signature& sig, int filler = 1) {
  const auto ms = required_multisets(sig);
  const int m = 3 * static_cast<int>(ms.size());
  return EdgeColouring::from_function(m, sig.n(), [&](Vertex x, Vertex y) {
    if (x / 3 != y / 3) return filler;
    const auto& t = ms[x / 3];
    const int a = x % 3, b = y % 3;
    if (a == 0 && b == 1) return t[0];
    if (a == 0 && b == 2) return t[1];
    return t[2];
  });
}

// Colouring of K_m that reuses an (n-1)-colour representation and paints its
// lexicographically first edge (0,1) with the fresh colour n.
inline EdgeColouring recolour_first_edge(const EdgeColouring& g) {
  const int n = g.colour_count() + 1;
  EdgeColouring widened(g.vertex_count(), n, g.edge_colours());
  return widened.recoloured(0, 1, static_cast<Colour>(n));
}

struct ConstructionRequest {
  Signature sig;
  Level level = Level::qualitative;
};

struct Constructed {
  EdgeColouring colouring;
  std::string method;
};

struct NotConstructible {
  enum class Kind {
    nonexistent,  // no representation at this level exists
    unsupported,  // may exist; no construction is provided here
  };
  Kind kind = Kind::nonexistent;
  std::string reason;
};

struct DelegatedToSearch {
  std::string reason;
};

using ConstructionResult = std::variant<Constructed, NotConstructible, DelegatedToSearch>;

// Order q of the affine plane behind lyndon_geometry(n): the least prime
// p >= 3 with p + 1 <= n <= 2p - 1, skipping p = 3 when a point has to be
// deleted (the lines through a deleted point of AG(2,3) keep only two points,
// so its new class has no long line). When that leaves nothing, n - 1 itself
// if it is a prime power.
inline int lyndon_order(int n) {
  for (int p = (n + 1) / 2; p <= n - 1; ++p)
    if (p >= 3 && is_prime(p) && p + 1 <= n && n <= 2 * p - 1 && (n == p + 1 || p >= 5)) return p;
  if (n >= 4 && prime_power_base(n - 1) != 0) return n - 1;
  throw std::logic_error("no affine plane order available for n = " + std::to_string(n));
}

// Qualitative representation for S = {1,3}, n >= 4: an affine plane of order
// q = lyndon_order(n) with its first n-q-1 points deleted.
inline Geometry lyndon_geometry(int n) {
  const int q = lyndon_order(n);
  const int k = n - q - 1;
  std::vector<Point> dropped;
  for (int d = 0; d < k; ++d) dropped.push_back(d);
  return k == 0 ? affine_plane(q) : drop_points(affine_plane(q), dropped);
}

namespace detail {

inline ConstructionResult dispatch(const ConstructionRequest& req) {
  const Signature& sig = req.sig;
  const int n = sig.n();
  const Level level = req.level;
  const std::uint8_t s = sig.mask();
  using Kind = NotConstructible::Kind;

  if (n == 1) {
    if (sig.allows(1)) return Constructed{monochromatic(3), "monochromatic K_3"};
    return Constructed{monochromatic(2), "single edge K_2"};
  }

  switch (s) {
    case 0b000:
      return NotConstructible{Kind::nonexistent, "every triangle is forbidden, so only K_2 with n = 1 qualifies"};
    case 0b001:
      return NotConstructible{Kind::nonexistent, "only monochromatic triangles are allowed, so n must be 1"};
    case 0b100: {  // {3}
      if (n == 2)
        return NotConstructible{Kind::nonexistent, "with two colours every triangle repeats a colour"};
      if (n % 2 == 1) {
        if (level == Level::strong) {
          if (n == 3) return Constructed{k4_matchings(), "K_4 perfect matchings"};
          return NotConstructible{Kind::nonexistent, "the algebra is not associative for n > 3"};
        }
        return Constructed{lambda2(standard_qn(n)), "lambda2 over Q_n"};
      }
      if (level == Level::feeble)
        return Constructed{recolour_first_edge(lambda2(standard_qn(n - 1))), "lambda2 over Q_{n-1}, one edge recoloured"};
      return NotConstructible{Kind::nonexistent, "qualitative representations exist only for odd n"};
    }
    case 0b010: {  // {2}
      if (level == Level::feeble) return Constructed{chain_colouring(n), "chain colouring"};
      if (n == 2) return Constructed{pentagon(), "pentagon"};
      return NotConstructible{Kind::nonexistent, "no qualitative representation exists for n > 2"};
    }
    case 0b110: {  // {2,3}
      if (level != Level::strong) return Constructed{walecki(n), "Walecki colouring of K_2n"};
      if (n <= 4) return DelegatedToSearch{"finite strong representations are searched for n <= 4"};
      return NotConstructible{Kind::unsupported, "finite-field strong representations are not built here"};
    }
    case 0b101: {  // {1,3}
      if (level == Level::feeble) {
        if (n >= 3) return Constructed{colouring_from_parallelism(near_pencil(n)), "near pencil"};
        return DelegatedToSearch{"no geometric construction for n = 2"};
      }
      if (level == Level::qualitative) {
        if (n >= 4) return Constructed{colouring_from_parallelism(lyndon_geometry(n)), "affine plane with points deleted"};
        return DelegatedToSearch{"qualitative representability for n <= 3 is settled by search"};
      }
      if (n >= 4) {
        if (prime_power_base(n - 1) != 0)
          return Constructed{colouring_from_parallelism(affine_plane(n - 1)), "affine plane AG(2, n-1)"};
        return NotConstructible{Kind::unsupported, "needs an affine plane of order n-1; only prime power orders are built"};
      }
      return DelegatedToSearch{"strong representations for n <= 3 are searched"};
    }
    case 0b011: {  // {1,2}
      if (level == Level::feeble) return Constructed{chain_colouring(n), "chain colouring"};
      return DelegatedToSearch{"representations are obtained by search"};
    }
    case 0b111: {  // {1,2,3}
      if (level != Level::strong) return Constructed{disjoint_triangles(sig), "disjoint triangles"};
      return DelegatedToSearch{"finite strong representations are searched"};
    }
    default:
      break;
  }
  throw std::logic_error("unreachable signature mask");
}

}  // namespace detail

// Explicit representation of the chromatic algebra at the requested level,
// where one is known. Every returned colouring is re-verified.
inline ConstructionResult construct(const ConstructionRequest& req) {
  ConstructionResult r = detail::dispatch(req);
  if (auto* c = std::get_if<Constructed>(&r)) {
    if (!verify(c->colouring, req.sig, req.level).passed)
      throw std::logic_error("construction '" + c->method + "' failed its own verification");
  }
  return r;
}

}  // namespace chromatic
