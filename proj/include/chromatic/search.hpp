#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "chromatic/colouring.hpp"
#include "chromatic/constructions.hpp"

namespace chromatic {

struct SearchLimits {
  std::uint64_t max_nodes = 0;  // 0: unlimited
  double max_seconds = 0;       // 0: unlimited
};

struct SearchOptions {
  Level level = Level::qualitative;
  int min_m = 2;
  int max_m = 0;  // 0: 3(n+1)
  SearchLimits limits;
  int threads = 1;
  bool strict_determinism = false;
  // Colour normalisation plus orderly (canonical prefix) generation. Off
  // means plain backtracking over all colourings, for cross-checking.
  bool symmetry_breaking = true;
};

enum class SearchStatus { found, exhausted, aborted };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::aborted: return "aborted";
  }
  return "?";
}

struct PerMRecord {
  int m = 0;
  SearchStatus status = SearchStatus::exhausted;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<EdgeColouring> colouring;
  int min_m = 0;
  int max_m = 0;
  int exhausted_up_to = 0;  // largest m such that every m' in [min_m, m] was fully searched without success
  std::uint64_t nodes = 0;
  std::vector<PerMRecord> per_m;

  // ExhaustedUpTo(3(n+1)) for the qualitative level is a nonexistence
  // certificate: qualitative representations, if any, live on at most three
  // times the number of atoms.
  bool certifies_nonexistence(const Signature& sig, Level level) const {
    return level == Level::qualitative && status == SearchStatus::exhausted && min_m <= 2 &&
           exhausted_up_to >= 3 * (sig.n() + 1);
  }
};

inline int default_max_m(const Signature& sig) { return 3 * (sig.n() + 1); }

namespace detail {

// Shared between workers of one run.
struct SearchShared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  SearchLimits limits;
  std::chrono::steady_clock::time_point start;

  bool charge(std::uint64_t k) {
    std::uint64_t total = nodes.fetch_add(k, std::memory_order_relaxed) + k;
    if (limits.max_nodes && total > limits.max_nodes) abort.store(true);
    if (limits.max_seconds > 0 && (total & 0xFFF) < k) {
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (s > limits.max_seconds) abort.store(true);
    }
    return !abort.load(std::memory_order_relaxed);
  }
};

// Backtracking over the edges of K_m in column-major order. Each assignment
// of edge (i,j) completes the triangles (h,i,j), h < i, which are checked
// against the forbidden sizes at once.
class Backtracker {
 public:
  enum class Mode { first, all };

  Backtracker(const Signature& sig, Level level, int m, bool symmetry_breaking, SearchShared& shared)
      : sig_(sig),
        level_(level),
        n_(sig.n()),
        m_(m),
        symmetry_(symmetry_breaking),
        shared_(shared),
        edges_(edge_count(m)),
        colours_(edges_, 0),
        colour_uses_(n_ + 1, 0),
        realised_(static_cast<std::size_t>(n_) * n_ * n_, 0),
        required_(static_cast<std::size_t>(n_) * n_ * n_, 0) {
    for (int a = 1; a <= n_; ++a)
      for (int b = 1; b <= n_; ++b)
        for (int c = 1; c <= n_; ++c) {
          int d = distinct_count(static_cast<Colour>(a), static_cast<Colour>(b), static_cast<Colour>(c));
          forbidden_[d] = sig.forbids(d);
        }
    if (level_ != Level::feeble) {
      for (const auto& t : required_multisets(sig)) {
        required_[key(t[0], t[1], t[2])] = 1;
        ++missing_;
      }
    }
    total_triangles_ = m < 3 ? 0 : static_cast<std::uint64_t>(m) * (m - 1) * (m - 2) / 6;
    edge_i_.resize(edges_);
    edge_j_.resize(edges_);
    for (Vertex j = 1; j < m; ++j)
      for (Vertex i = 0; i < j; ++i) {
        edge_i_[edge_index(i, j)] = i;
        edge_j_[edge_index(i, j)] = j;
      }
  }

  // Re-applies a prefix produced by collect_prefixes.
  bool replay(const std::vector<Colour>& prefix) {
    for (std::size_t e = 0; e < prefix.size(); ++e) {
      if (!assign(e, prefix[e])) return false;
    }
    return true;
  }

  // Runs from edge `from` (all earlier edges assigned). Stops after the first
  // solution in Mode::first.
  void run(std::size_t from, Mode mode) {
    mode_ = mode;
    dfs(from);
  }

  // DFS to `depth` edges, recording every surviving prefix in order.
  void collect_prefixes(std::size_t depth, std::vector<std::vector<Colour>>& out) {
    collect_depth_ = depth;
    collect_ = &out;
    dfs(0);
    collect_ = nullptr;
  }

  const std::vector<EdgeColouring>& solutions() const { return solutions_; }
  std::uint64_t local_nodes() const { return local_nodes_; }

 private:
  std::size_t key(int a, int b, int c) const {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (static_cast<std::size_t>(a - 1) * n_ + (b - 1)) * n_ + (c - 1);
  }

  std::uint64_t completed_triangles_after(std::size_t e) const {
    const std::uint64_t j = edge_j_[e], i = edge_i_[e];
    const std::uint64_t before = j < 3 ? 0 : j * (j - 1) * (j - 2) / 6;
    return before + i * (i + 1) / 2;
  }

  // Assigns colour c to edge e, checking completed triangles. On failure the
  // state is left unchanged.
  bool assign(std::size_t e, Colour c) {
    const Vertex i = edge_i_[e], j = edge_j_[e];
    const Colour* col_j = colours_.data() + edge_index(0, j);
    for (Vertex h = 0; h < i; ++h) {
      const Colour hi = colours_[edge_index(h, i)], hj = col_j[h];
      if (forbidden_[distinct_count(hi, hj, c)]) return false;
    }
    colours_[e] = c;
    if (colour_uses_[c]++ == 0) ++used_colours_;
    if (c > max_colour_) {
      max_colour_stack_.push_back(max_colour_);
      max_colour_ = c;
    } else {
      max_colour_stack_.push_back(max_colour_);
    }
    if (level_ != Level::feeble) {
      for (Vertex h = 0; h < i; ++h) {
        std::size_t k = key(colours_[edge_index(h, i)], col_j[h], c);
        if (realised_[k]++ == 0 && required_[k]) --missing_;
      }
    }
    return true;
  }

  void unassign(std::size_t e) {
    const Vertex i = edge_i_[e], j = edge_j_[e];
    const Colour c = colours_[e];
    const Colour* col_j = colours_.data() + edge_index(0, j);
    if (level_ != Level::feeble) {
      for (Vertex h = 0; h < i; ++h) {
        std::size_t k = key(colours_[edge_index(h, i)], col_j[h], c);
        if (--realised_[k] == 0 && required_[k]) ++missing_;
      }
    }
    if (--colour_uses_[c] == 0) --used_colours_;
    max_colour_ = max_colour_stack_.back();
    max_colour_stack_.pop_back();
    colours_[e] = 0;
  }

  bool feasible_after(std::size_t e) const {
    const std::uint64_t remaining_edges = edges_ - e - 1;
    if (static_cast<std::uint64_t>(n_ - used_colours_) > remaining_edges) return false;
    if (missing_ > 0 && static_cast<std::uint64_t>(missing_) > total_triangles_ - completed_triangles_after(e))
      return false;
    return true;
  }

  // Orderly generation: the colouring induced on vertices 0..j must be the
  // canonical (least) one of its isomorphism class.
  bool prefix_canonical(Vertex j) const {
    std::vector<Colour> prefix(colours_.begin(), colours_.begin() + edge_count(j + 1));
    EdgeColouring g(j + 1, n_, std::move(prefix));
    CanonSearch canon(g);
    return !canon.has_smaller();
  }

  bool accept_leaf() const {
    if (used_colours_ != n_) return false;
    if (missing_ != 0) return false;
    if (level_ == Level::strong) return verify(EdgeColouring(m_, n_, colours_), sig_, Level::strong).passed;
    return true;
  }

  // Returns true to stop.
  bool dfs(std::size_t e) {
    if (collect_ && e == collect_depth_) {
      collect_->emplace_back(colours_.begin(), colours_.begin() + e);
      return false;
    }
    if (e == edges_) {
      if (accept_leaf()) {
        solutions_.emplace_back(m_, n_, colours_);
        return mode_ == Mode::first;
      }
      return false;
    }
    const int top = symmetry_ ? std::min<int>(max_colour_ + 1, n_) : n_;
    const bool closes_column = edge_i_[e] + 1 == edge_j_[e];
    for (int c = 1; c <= top; ++c) {
      ++local_nodes_;
      if (!shared_.charge(1)) return true;
      if (!assign(e, static_cast<Colour>(c))) continue;
      bool stop = false;
      if (feasible_after(e) && (!symmetry_ || !closes_column || prefix_canonical(edge_j_[e]))) stop = dfs(e + 1);
      unassign(e);
      if (stop) return true;
    }
    return false;
  }

  Signature sig_;
  Level level_;
  int n_;
  int m_;
  bool symmetry_;
  SearchShared& shared_;
  std::size_t edges_;
  std::vector<Colour> colours_;
  std::vector<int> colour_uses_;
  int used_colours_ = 0;
  Colour max_colour_ = 0;
  std::vector<Colour> max_colour_stack_;
  std::vector<int> realised_;
  std::vector<char> required_;
  int missing_ = 0;
  std::array<bool, 4> forbidden_{};
  std::uint64_t total_triangles_ = 0;
  std::vector<Vertex> edge_i_, edge_j_;
  Mode mode_ = Mode::first;
  std::vector<EdgeColouring> solutions_;
  std::uint64_t local_nodes_ = 0;
  std::size_t collect_depth_ = 0;
  std::vector<std::vector<Colour>>* collect_ = nullptr;
};

struct SubtreeResult {
  std::vector<EdgeColouring> solutions;
  bool complete = false;
};

// Explores K_m for one fixed m. With several threads the tree is split at a
// fixed edge depth; subtrees are numbered in DFS order and merged by index,
// so the first solution reported is the one sequential search would find.
inline SearchStatus search_fixed_m(const Signature& sig, Level level, int m, bool symmetry, int threads,
                                   Backtracker::Mode mode, SearchShared& shared,
                                   std::vector<EdgeColouring>& solutions) {
  const std::size_t edges = edge_count(m);
  const std::size_t split = std::min<std::size_t>(edges, edge_count(std::min(m, 6)));
  if (threads <= 1 || edges <= split || split == 0) {
    Backtracker bt(sig, level, m, symmetry, shared);
    bt.run(0, mode);
    solutions = bt.solutions();
    if (shared.abort.load() && (solutions.empty() || mode == Backtracker::Mode::all)) return SearchStatus::aborted;
    return solutions.empty() ? SearchStatus::exhausted : SearchStatus::found;
  }

  std::vector<std::vector<Colour>> prefixes;
  {
    Backtracker bt(sig, level, m, symmetry, shared);
    bt.collect_prefixes(split, prefixes);
    if (shared.abort.load()) return SearchStatus::aborted;
  }
  std::vector<SubtreeResult> results(prefixes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
  auto worker = [&] {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= prefixes.size() || shared.abort.load()) return;
      if (mode == Backtracker::Mode::first && idx > first_hit.load()) continue;
      Backtracker bt(sig, level, m, symmetry, shared);
      if (!bt.replay(prefixes[idx])) throw std::logic_error("prefix replay failed");
      bt.run(split, mode);
      results[idx].solutions = bt.solutions();
      results[idx].complete = !shared.abort.load() || !bt.solutions().empty();
      if (mode == Backtracker::Mode::first && !bt.solutions().empty()) {
        std::size_t cur = first_hit.load();
        while (idx < cur && !first_hit.compare_exchange_weak(cur, idx)) {
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();

  solutions.clear();
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    if (!results[idx].complete) return SearchStatus::aborted;
    for (auto& s : results[idx].solutions) solutions.push_back(std::move(s));
    if (mode == Backtracker::Mode::first && !solutions.empty()) return SearchStatus::found;
  }
  if (shared.abort.load()) return SearchStatus::aborted;
  return solutions.empty() ? SearchStatus::exhausted : SearchStatus::found;
}

}  // namespace detail

// Looks for a representation of the chromatic algebra on K_m for m running
// through [min_m, max_m] in increasing order. Never reports exhaustion for an
// m it did not finish.
inline SearchOutcome search(const Signature& sig, const SearchOptions& opts = {}) {
  SearchOutcome out;
  out.min_m = std::max(opts.min_m, 1);
  out.max_m = opts.max_m > 0 ? opts.max_m : default_max_m(sig);
  out.exhausted_up_to = out.min_m - 1;
  const int threads = opts.strict_determinism ? 1 : std::max(opts.threads, 1);

  detail::SearchShared shared;
  shared.limits = opts.limits;
  shared.start = std::chrono::steady_clock::now();

  for (int m = out.min_m; m <= out.max_m; ++m) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t n0 = shared.nodes.load();
    std::vector<EdgeColouring> sols;
    SearchStatus st = detail::search_fixed_m(sig, opts.level, m, opts.symmetry_breaking, threads,
                                             detail::Backtracker::Mode::first, shared, sols);
    PerMRecord rec;
    rec.m = m;
    rec.status = st;
    rec.nodes = shared.nodes.load() - n0;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.per_m.push_back(rec);
    if (st == SearchStatus::found) {
      out.status = SearchStatus::found;
      out.colouring = sols.front();
      break;
    }
    if (st == SearchStatus::aborted) {
      out.status = SearchStatus::aborted;
      break;
    }
    out.exhausted_up_to = m;
  }
  out.nodes = shared.nodes.load();
  if (out.colouring && !verify(*out.colouring, sig, opts.level).passed)
    throw std::logic_error("search produced a colouring that fails verification");
  return out;
}

struct EnumerationResult {
  std::vector<EdgeColouring> colourings;  // canonical, sorted
  bool partial = false;
  std::uint64_t nodes = 0;
};

// All colourings of K_m passing `level`, one canonical representative per
// isomorphism class (vertex and colour relabelling), sorted.
inline EnumerationResult enumerate(const Signature& sig, Level level, int m, const SearchOptions& opts = {}) {
  if (m < 1) throw std::invalid_argument("enumerate needs m >= 1");
  detail::SearchShared shared;
  shared.limits = opts.limits;
  shared.start = std::chrono::steady_clock::now();
  std::vector<EdgeColouring> sols;
  const int threads = opts.strict_determinism ? 1 : std::max(opts.threads, 1);
  SearchStatus st = detail::search_fixed_m(sig, level, m, opts.symmetry_breaking, threads,
                                           detail::Backtracker::Mode::all, shared, sols);
  EnumerationResult r;
  r.partial = st == SearchStatus::aborted;
  r.nodes = shared.nodes.load();
  std::set<EdgeColouring> unique;
  for (const auto& g : sols) unique.insert(opts.symmetry_breaking ? g : canonical_form(g));
  r.colourings.assign(unique.begin(), unique.end());
  return r;
}

// Summary table support ---------------------------------------------------

enum class CellStatus {
  constructed,            // explicit construction, verified
  found_by_search,        // search produced a verified colouring
  certified_nonexistent,  // qualitative search exhausted up to 3(n+1)
  excluded_by_theorem,    // construct() reports nonexistence; search did not finish
  out_of_scope,           // no construction here and finite search inconclusive
  unknown,                // search budget exhausted
};

inline std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::constructed: return "Constructed";
    case CellStatus::found_by_search: return "Search";
    case CellStatus::certified_nonexistent: return "Certified";
    case CellStatus::excluded_by_theorem: return "Theorem";
    case CellStatus::out_of_scope: return "OutOfScope";
    case CellStatus::unknown: return "Unknown";
  }
  return "?";
}

// Yes / No / ? as in the representability table.
inline std::string_view verdict(CellStatus s) {
  switch (s) {
    case CellStatus::constructed:
    case CellStatus::found_by_search: return "Yes";
    case CellStatus::certified_nonexistent:
    case CellStatus::excluded_by_theorem: return "No";
    default: return "?";
  }
}

struct SummaryCell {
  Level level = Level::qualitative;
  CellStatus status = CellStatus::unknown;
  int vertices = 0;     // size of the representation, when one was produced
  bool conflict = false;  // construct() and search disagree
  std::string note;
};

struct SummaryRow {
  Signature sig;
  std::vector<SummaryCell> cells;  // feeble, qualitative, strong
};

inline SummaryCell certify_cell(const Signature& sig, Level level, const SearchLimits& limits) {
  SummaryCell cell;
  cell.level = level;
  const ConstructionResult r = construct({sig, level});
  SearchOptions opts;
  opts.level = level;
  opts.limits = limits;
  opts.strict_determinism = true;

  if (const auto* c = std::get_if<Constructed>(&r)) {
    cell.status = CellStatus::constructed;
    cell.vertices = c->colouring.vertex_count();
    cell.note = c->method;
    return cell;
  }
  if (const auto* nc = std::get_if<NotConstructible>(&r)) {
    cell.note = nc->reason;
    if (nc->kind == NotConstructible::Kind::unsupported) {
      cell.status = CellStatus::out_of_scope;
      return cell;
    }
    cell.status = CellStatus::excluded_by_theorem;
    if (level == Level::strong) return cell;
    const SearchOutcome s = search(sig, opts);
    if (s.status == SearchStatus::found) {
      cell.status = CellStatus::found_by_search;
      cell.vertices = s.colouring->vertex_count();
      cell.conflict = true;
    } else if (s.certifies_nonexistence(sig, level)) {
      cell.status = CellStatus::certified_nonexistent;
      cell.note = "exhausted up to m=" + std::to_string(s.exhausted_up_to);
    }
    return cell;
  }
  const auto& d = std::get<DelegatedToSearch>(r);
  const SearchOutcome s = search(sig, opts);
  if (s.status == SearchStatus::found) {
    cell.status = CellStatus::found_by_search;
    cell.vertices = s.colouring->vertex_count();
    cell.note = "found on m=" + std::to_string(cell.vertices);
  } else if (s.certifies_nonexistence(sig, level)) {
    cell.status = CellStatus::certified_nonexistent;
    cell.note = "exhausted up to m=" + std::to_string(s.exhausted_up_to);
  } else if (s.status == SearchStatus::exhausted) {
    cell.status = CellStatus::out_of_scope;
    cell.note = "none up to m=" + std::to_string(s.exhausted_up_to);
  } else {
    cell.status = CellStatus::unknown;
    cell.note = d.reason + "; budget exhausted";
  }
  return cell;
}

inline std::vector<SummaryRow> certify_summary_row(const Signature& base, int n_lo, int n_hi,
                                                   const SearchLimits& limits) {
  std::vector<SummaryRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    SummaryRow row;
    row.sig = Signature::from_mask(base.mask(), n);
    for (Level level : {Level::feeble, Level::qualitative, Level::strong})
      row.cells.push_back(certify_cell(row.sig, level, limits));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace chromatic
