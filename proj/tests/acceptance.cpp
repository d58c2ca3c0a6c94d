// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chromatic/algebra.hpp"
#include "chromatic/cli.hpp"
#include "chromatic/colouring.hpp"
#include "chromatic/constructions.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/quasigroup.hpp"
#include "chromatic/search.hpp"
#include "oracles.hpp"

using namespace chromatic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the reasons a criterion failed.
struct Check {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  bool ok() const { return problems.empty(); }
};

std::string sig_name(const Signature& sig) { return sig.set_string() + " n=" + std::to_string(sig.n()); }

// Number of classes a colour-and-vertex class splits into when only vertex
// relabelling is allowed: the distinct vertex-only canonical keys over all
// colour permutations.
int vertex_only_classes(const EdgeColouring& g) {
  const int m = g.vertex_count();
  const int n = g.colour_count();
  std::vector<int> cp(n), vp(m);
  std::iota(cp.begin(), cp.end(), 1);
  std::set<std::vector<int>> keys;
  do {
    std::vector<int> best;
    std::iota(vp.begin(), vp.end(), 0);
    do {
      std::vector<int> key;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) key.push_back(cp[g.colour(vp[i], vp[j]) - 1]);
      if (best.empty() || key < best) best = std::move(key);
    } while (std::next_permutation(vp.begin(), vp.end()));
    keys.insert(std::move(best));
  } while (std::next_permutation(cp.begin(), cp.end()));
  return static_cast<int>(keys.size());
}

std::string classification_note;

// 1. Quasigroup family.
void criterion_quasigroups(Check& c) {
  for (int n = 3; n <= 15; n += 2) {
    const Signature sig({3}, n);
    const Quasigroup q = standard_qn(n);
    for (int which = 1; which <= 2; ++which) {
      const auto t0 = Clock::now();
      const EdgeColouring g = which == 1 ? lambda1(q) : lambda2(q);
      const bool passed = verify(g, sig, Level::qualitative).passed;
      const double dt = seconds_since(t0);
      c.require(passed, "lambda" + std::to_string(which) + " fails for n=" + std::to_string(n));
      c.require(dt < 1.0, "lambda" + std::to_string(which) + " took " + std::to_string(dt) + " s for n=" +
                              std::to_string(n));
    }
  }
}

// 2. Odd-only theorem through search.
void criterion_odd_only(Check& c) {
  const auto t0 = Clock::now();
  for (int n : {3, 5, 7}) {
    const Signature sig({3}, n);
    const SearchOutcome s = search(sig, {});
    c.require(s.status == SearchStatus::found, "no representation found for " + sig_name(sig));
    if (s.colouring) c.require(oracle::holds(*s.colouring, sig, Level::qualitative), "oracle rejects " + sig_name(sig));
  }
  for (int n : {4, 6}) {
    const Signature sig({3}, n);
    const SearchOutcome s = search(sig, {});
    c.require(s.status == SearchStatus::exhausted && s.exhausted_up_to == 3 * (n + 1),
              "expected exhaustion up to " + std::to_string(3 * (n + 1)) + " for " + sig_name(sig));
  }
  const double dt = seconds_since(t0);
  c.require(dt < 60.0, "odd-only searches took " + std::to_string(dt) + " s");
}

// Number of ways to join a new vertex to g so that the result passes.
int extension_count(const EdgeColouring& g, const Signature& sig) {
  const int m = g.vertex_count(), n = g.colour_count();
  std::vector<int> row(m, 1);
  int count = 0;
  while (true) {
    const EdgeColouring h = EdgeColouring::from_function(m + 1, n, [&](Vertex i, Vertex j) {
      return j == m ? row[i] : static_cast<int>(g.at(i, j));
    });
    if (oracle::holds(h, sig, Level::qualitative)) ++count;
    int k = 0;
    while (k < m && row[k] == n) row[k++] = 1;
    if (k == m) break;
    ++row[k];
  }
  return count;
}

// 3. Classification of {3}, n = 5 on 5 and 6 vertices; also the quasigroup
// half of criterion 7.
bool quasigroup_round_trip_ok = false;

void criterion_classification(Check& c) {
  const Signature sig({3}, 5);
  const EnumerationResult five = enumerate(sig, Level::qualitative, 5);
  const EnumerationResult six = enumerate(sig, Level::qualitative, 6);
  c.require(!five.partial && !six.partial, "enumeration did not finish");
  c.require(!five.colourings.empty() && !six.colourings.empty(), "enumeration returned nothing");
  for (const auto& g : five.colourings) {
    c.require(extension_count(g, sig) == 1, "an m=5 representation does not extend uniquely");
    int matches = 0;
    for (const auto& h : six.colourings) {
      bool contains = false;
      for (Vertex drop = 0; drop < 6 && !contains; ++drop) {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < 6; ++v)
          if (v != drop) keep.push_back(v);
        contains = are_isomorphic(h.induced(keep), g);
      }
      matches += contains;
    }
    c.require(matches == 1, "an m=5 representation lies in " + std::to_string(matches) + " m=6 classes");
  }
  bool round_trip = true;
  const Quasigroup q5 = standard_qn(5);
  for (const auto& h : six.colourings) {
    try {
      const Quasigroup q = quasigroup_from_colouring(h);
      round_trip = round_trip && validate(q).valid() && are_isomorphic(lambda2(q), h) &&
                   find_isomorphism(q, q5).has_value();
    } catch (const std::exception& e) {
      round_trip = false;
      c.require(false, std::string("quasigroup_from_colouring threw: ") + e.what());
    }
  }
  c.require(round_trip, "quasigroup round trip failed");
  int five_vertex_only = 0, six_vertex_only = 0;
  for (const auto& g : five.colourings) five_vertex_only += vertex_only_classes(g);
  for (const auto& h : six.colourings) six_vertex_only += vertex_only_classes(h);
  classification_note = "{3} n=5 classes up to vertex and colour relabelling: m=5 " +
                        std::to_string(five.colourings.size()) + ", m=6 " + std::to_string(six.colourings.size()) +
                        "; up to vertex relabelling only: m=5 " + std::to_string(five_vertex_only) + ", m=6 " +
                        std::to_string(six_vertex_only);
  quasigroup_round_trip_ok = round_trip && c.ok();
}

// 4. Walecki colourings.
void criterion_walecki(Check& c) {
  const auto t0 = Clock::now();
  for (int n = 1; n <= 15; ++n) {
    const Signature sig({2, 3}, n);
    const EdgeColouring g = walecki(n);
    c.require(verify(g, sig, Level::qualitative).passed, "walecki fails qualitative for n=" + std::to_string(n));
    int mono = 0;
    const int m = g.vertex_count();
    for (Vertex x = 0; x < m; ++x)
      for (Vertex y = x + 1; y < m; ++y)
        for (Vertex z = y + 1; z < m; ++z) mono += g.at(x, y) == g.at(x, z) && g.at(x, z) == g.at(y, z);
    c.require(mono == 0, std::to_string(mono) + " monochromatic triangles for n=" + std::to_string(n));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          const auto w = walecki_witness(n, i, j, k);
          const bool distinct = w[0] != w[1] && w[0] != w[2] && w[1] != w[2];
          c.require(distinct && g.colour(w[0], w[1]) == i && g.colour(w[0], w[2]) == j && g.colour(w[1], w[2]) == k,
                    "witness mismatch for n=" + std::to_string(n) + " triple " + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(k));
        }
  }
  const double dt = seconds_since(t0);
  c.require(dt < 10.0, "walecki checks took " + std::to_string(dt) + " s");
}

// 5. {2}: no qualitative representation for n = 3.
void criterion_two(Check& c) {
  const auto t0 = Clock::now();
  const Signature sig({2}, 3);
  const SearchOutcome s = search(sig, {});
  const double dt = seconds_since(t0);
  c.require(s.status != SearchStatus::aborted, "search aborted");
  c.require(s.status == SearchStatus::exhausted && s.exhausted_up_to == 12, "expected exhaustion up to m=12");
  c.require(dt < 600.0, "search took " + std::to_string(dt) + " s");
  c.require(verify(pentagon(), Signature({2}, 2), Level::strong).passed, "pentagon is not strong");
  for (int n = 2; n <= 10; ++n)
    c.require(verify(chain_colouring(n), Signature({2}, n), Level::feeble).passed,
              "chain colouring not feeble for n=" + std::to_string(n));
}

// 6. Lyndon geometries.
void criterion_lyndon(Check& c) {
  for (int p : {3, 5, 7}) {
    const EdgeColouring g = colouring_from_parallelism(affine_plane(p));
    c.require(verify(g, Signature({1, 3}, p + 1), Level::strong).passed, "AG(2," + std::to_string(p) + ") not strong");
  }
  for (int q : {3, 5, 7}) {
    const Geometry plane = affine_plane(q);
    for (int k = 0; k <= q - 2; ++k) {
      std::vector<Point> d;
      for (int i = 0; i < k; ++i) d.push_back(i);
      const Geometry geo = drop_points(plane, d);
      c.require(static_cast<int>(geo.parallelism.blocks.size()) == q + k + 1,
                "drop_points q=" + std::to_string(q) + " k=" + std::to_string(k) + " gave " +
                    std::to_string(geo.parallelism.blocks.size()) + " classes");
    }
  }
  for (int n = 4; n <= 10; ++n) {
    const Signature sig({1, 3}, n);
    const ConstructionResult r = construct({sig, Level::qualitative});
    const auto* made = std::get_if<Constructed>(&r);
    c.require(made != nullptr && verify(made->colouring, sig, Level::qualitative).passed,
              "no qualitative construction for n=" + std::to_string(n));
  }
  for (int n = 3; n <= 10; ++n) {
    const Signature sig({1, 3}, n);
    const EdgeColouring g = colouring_from_parallelism(near_pencil(n));
    c.require(verify(g, sig, Level::feeble).passed, "near pencil not feeble for n=" + std::to_string(n));
    const VerificationReport r = verify(g, sig, Level::qualitative);
    bool mono_missing = false;
    for (const auto& t : r.missing_required) mono_missing = mono_missing || (t[0] == t[1] && t[1] == t[2]);
    c.require(!r.passed && mono_missing, "near pencil not rejected by missing monochromatic multisets, n=" +
                                             std::to_string(n));
  }
}

// 7. Round trips.
void criterion_round_trips(Check& c) {
  std::vector<std::pair<std::string, Geometry>> built;
  for (int p : {2, 3, 5, 7}) {
    built.emplace_back("AG(2," + std::to_string(p) + ")", affine_plane(p));
    for (int k = 1; k <= p - 2; ++k) {
      std::vector<Point> d;
      for (int i = 0; i < k; ++i) d.push_back(i);
      built.emplace_back("AG(2," + std::to_string(p) + ") minus " + std::to_string(k), drop_points(affine_plane(p), d));
    }
  }
  for (int n = 3; n <= 10; ++n) built.emplace_back("near pencil " + std::to_string(n), near_pencil(n));
  for (int n = 4; n <= 10; ++n) built.emplace_back("lyndon " + std::to_string(n), lyndon_geometry(n));
  for (const auto& [name, geo] : built) {
    const Geometry back = linear_space_from_colouring(colouring_from_parallelism(geo));
    c.require(geometries_isomorphic(geo, back) && same_geometry(geo, back), "round trip fails for " + name);
  }
  c.require(quasigroup_round_trip_ok, "quasigroup round trip (criterion 3) failed");
}

// 8. Algebra layer.
void criterion_algebra(Check& c) {
  for (std::uint8_t mask = 0; mask < 8; ++mask)
    for (int n = 1; n <= 8; ++n) {
      const Signature sig = Signature::from_mask(mask, n);
      c.require(check_na_atom_structure(chromatic_atoms(sig)).valid, "atom structure invalid for " + sig_name(sig));
    }
  for (int n = 2; n <= 6; ++n) {
    c.require(is_associative(chromatic_atoms(Signature({3}, n))).associative == (n <= 3),
              "associativity of {3} wrong for n=" + std::to_string(n));
    c.require(is_associative(chromatic_atoms(Signature({2}, n))).associative,
              "{2} not associative for n=" + std::to_string(n));
  }
  for (std::uint8_t mask = 0; mask < 8; ++mask)
    for (int n = 1; n <= 6; ++n) {
      const Signature sig = Signature::from_mask(mask, n);
      const AtomStructure x = chromatic_atoms(sig);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          const auto got = compose(x, AtomSet::of(n + 1, {i}), AtomSet::of(n + 1, {j})).atoms();
          const auto want = oracle::table_composition(mask, n, i, j);
          c.require(std::vector<int>(want.begin(), want.end()) == got,
                    "composition a_" + std::to_string(i) + ";a_" + std::to_string(j) + " wrong for " + sig_name(sig));
        }
    }
}

// Deterministic sweep of colourings: every colouring for m <= 4, and an
// evenly strided sample of the colourings of K_5 and K_6.
std::vector<EdgeColouring> sweep() {
  std::vector<EdgeColouring> out;
  for (int n = 1; n <= 3; ++n)
    for (int m = 2; m <= 6; ++m) {
      const std::size_t e = edge_count(m);
      unsigned long long total = 1;
      for (std::size_t k = 0; k < e; ++k) total *= n;
      const unsigned long long samples = m <= 4 ? total : std::min<unsigned long long>(total, 200);
      const unsigned long long stride = total / samples;
      for (unsigned long long s = 0; s < samples; ++s) {
        unsigned long long code = s * stride + (s * 7919) % std::max<unsigned long long>(stride, 1);
        std::vector<Colour> cs(e);
        for (std::size_t k = 0; k < e; ++k) {
          cs[k] = static_cast<Colour>(1 + code % n);
          code /= n;
        }
        out.emplace_back(m, n, cs);
      }
    }
  return out;
}

// 9. Monotonicity in the level and in S.
void criterion_monotonicity(Check& c) {
  const auto colourings = sweep();
  c.require(colourings.size() >= 1000, "only " + std::to_string(colourings.size()) + " colourings generated");
  std::size_t feeble_passes = 0;
  for (const auto& g : colourings)
    for (std::uint8_t mask = 0; mask < 8; ++mask) {
      const Signature sig = Signature::from_mask(mask, g.colour_count());
      const bool f = verify(g, sig, Level::feeble).passed;
      const bool q = verify(g, sig, Level::qualitative).passed;
      const bool s = verify(g, sig, Level::strong).passed;
      c.require(!s || q, "strong without qualitative");
      c.require(!q || f, "qualitative without feeble");
      if (!f) continue;
      ++feeble_passes;
      for (std::uint8_t wider = 0; wider < 8; ++wider)
        if ((wider & mask) == mask)
          c.require(verify(g, Signature::from_mask(wider, g.colour_count()), Level::feeble).passed,
                    "feeble pass lost when enlarging S");
    }
  c.require(feeble_passes > 0, "no feeble pass witnessed");
}

// 10. {1,3}, n = 3: the search completes and the table reports it.
void criterion_discrepancy(Check& c, std::string& verdict_line) {
  const Signature sig({1, 3}, 3);
  SearchOptions opts;
  opts.max_m = 12;
  const SearchOutcome s = search(sig, opts);
  c.require(s.status != SearchStatus::aborted, "search aborted");
  const std::string table = cli::render_table(3, 200'000);
  std::istringstream lines(table);
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind("{1,3}", 0) == 0 && line.size() > 9 && line.substr(9, 2) == "3 ") verdict_line = line;
  c.require(!verdict_line.empty(), "table has no {1,3} n=3 row");
  const std::string expected = s.status == SearchStatus::found ? "Yes Search" : "No Certified";
  c.require(verdict_line.find(expected) != std::string::npos, "table row does not show '" + expected + "'");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<void(Check&)> body;
  };
  std::string verdict_line;
  const std::vector<Criterion> criteria{
      {1, "quasigroup family lambda1/lambda2 are qualitative", criterion_quasigroups},
      {2, "{3}: found for odd n, exhausted for even n", criterion_odd_only},
      {3, "{3}, n=5: classification on 5 and 6 vertices", criterion_classification},
      {4, "Walecki colourings and witnesses", criterion_walecki},
      {5, "{2}: nonexistence for n=3, pentagon, chain", criterion_two},
      {6, "Lyndon geometries, drop_points, near pencils", criterion_lyndon},
      {7, "geometry and quasigroup round trips", criterion_round_trips},
      {8, "atom structures, associativity, composition table", criterion_algebra},
      {9, "monotonicity in level and in S", criterion_monotonicity},
      {10, "{1,3}, n=3: search completes and is tabulated",
       [&](Check& c) { criterion_discrepancy(c, verdict_line); }},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", dt);
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " (" << timing << ")\n";
    const std::size_t shown = std::min<std::size_t>(c.problems.size(), 5);
    for (std::size_t k = 0; k < shown; ++k) std::cout << "    " << c.problems[k] << "\n";
    if (c.problems.size() > shown) std::cout << "    ... " << c.problems.size() - shown << " more\n";
    if (!c.ok()) ++failures;
  }
  if (!classification_note.empty()) std::cout << classification_note << "\n";
  if (!verdict_line.empty()) std::cout << "table row: " << verdict_line << "\n";
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
