#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chromatic/algebra.hpp"
#include "chromatic/colouring.hpp"
#include "chromatic/constructions.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/io.hpp"
#include "chromatic/quasigroup.hpp"
#include "chromatic/search.hpp"

namespace chromatic::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_verify_failed = 2,
  exit_budget = 3,
  exit_not_constructible = 4,
};

// Node budget per table cell when neither --budget-nodes nor
// CHROMATIC_BUDGET_NODES is given.
inline constexpr std::uint64_t default_table_budget = 2'000'000;

// Signatures in the row order of the representability table.
inline constexpr std::uint8_t table_masks[] = {0b111, 0b110, 0b101, 0b011, 0b100, 0b010, 0b001, 0b000};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("CHROMATIC_BUDGET_NODES");
  if (v == nullptr || *v == '\0') return fallback;
  try {
    std::size_t used = 0;
    unsigned long long b = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument("trailing characters");
    return b;
  } catch (const std::exception&) {
    throw UsageError("CHROMATIC_BUDGET_NODES must be a non-negative integer");
  }
}

inline std::vector<int> parse_int_list(const std::string& text, std::size_t expected) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (out.size() != expected)
    throw UsageError("expected " + std::to_string(expected) + " comma-separated integers, got '" + text + "'");
  return out;
}

inline Signature make_signature(const std::string& s, int n) {
  try {
    return Signature(parse_sizes(s), n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline Level make_level(const std::string& text) {
  try {
    return parse_level(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

inline io::LoadedColouring load_colouring(const std::string& path) {
  try {
    return io::colouring_from_json(io::parse(read_file(path)));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("'" + path + "' is not a colouring document: " + e.what());
  }
}

inline std::string triple_string(const ColourTriple& t) {
  return "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]";
}

inline void print_report(std::ostream& out, const VerificationReport& r, const Signature& sig, Level level) {
  out << (r.passed ? "PASS" : "FAIL") << " " << to_string(level) << " S=" << sig.set_string() << " n=" << sig.n()
      << "\n";
  if (!r.surjective) {
    out << "  unused colours:";
    for (int c : r.unused_colours) out << " " << c;
    out << "\n";
  }
  if (r.forbidden_count > 0) {
    out << "  forbidden triangles: " << r.forbidden_count << "\n";
    for (const auto& w : r.forbidden_witnesses)
      out << "    (" << w.vertices[0] << "," << w.vertices[1] << "," << w.vertices[2] << ") colours "
          << triple_string(w.colours) << "\n";
  }
  if (r.missing_count > 0) {
    out << "  missing multisets: " << r.missing_count << "\n";
    for (const auto& t : r.missing_required) out << "    " << triple_string(t) << "\n";
  }
  if (r.strong_failure_count > 0) {
    out << "  unwitnessed triples: " << r.strong_failure_count << "\n";
    for (const auto& f : r.strong_failures)
      out << "    edge (" << f.x << "," << f.y << ") triple " << triple_string(f.triple) << "\n";
  }
}

// Writes a colouring to the requested sinks, or to `out` as JSON.
inline void emit_colouring(std::ostream& out, const EdgeColouring& g, const Signature& sig,
                           const std::string& json_path, const std::string& dot_path) {
  if (!json_path.empty()) write_file(json_path, io::dump(io::colouring_to_json(g, sig)));
  if (!dot_path.empty()) write_file(dot_path, io::to_dot(g));
  if (json_path.empty() && dot_path.empty()) out << io::dump(io::colouring_to_json(g, sig));
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

inline std::string help_footer() {
  return "Exit codes:\n"
         "  0  success\n"
         "  1  usage error\n"
         "  2  verification failure\n"
         "  3  search budget exhausted\n"
         "  4  not constructible\n"
         "Environment:\n"
         "  CHROMATIC_BUDGET_NODES  default node budget for search, enumerate and table\n";
}

// Renders the representability table for n = 1..max_n. The text depends only
// on its arguments.
inline std::string render_table(int max_n, std::uint64_t budget_nodes) {
  SearchLimits limits;
  limits.max_nodes = budget_nodes;
  std::ostringstream os;
  os << "Representability of E_{n+1}^S, n = 1.." << max_n << ", node budget per cell "
     << (budget_nodes == 0 ? std::string("unlimited") : std::to_string(budget_nodes)) << "\n\n";
  const std::size_t w_s = 9, w_n = 4, w_c = 20;
  os << detail::pad("S", w_s) << detail::pad("n", w_n) << detail::pad("feeble", w_c) << detail::pad("qualitative", w_c)
     << "strong\n";
  std::vector<std::string> notes;
  for (std::uint8_t mask : table_masks) {
    const auto rows = certify_summary_row(Signature::from_mask(mask, 1), 1, max_n, limits);
    for (const auto& row : rows) {
      std::string line = detail::pad(row.sig.set_string(), w_s) + detail::pad(std::to_string(row.sig.n()), w_n);
      for (std::size_t k = 0; k < row.cells.size(); ++k) {
        const auto& cell = row.cells[k];
        std::string text = std::string(verdict(cell.status)) + " " + std::string(to_string(cell.status));
        if (cell.conflict) text += "!";
        line += k + 1 < row.cells.size() ? detail::pad(text, w_c) : text;
        if (!cell.note.empty())
          notes.push_back(row.sig.set_string() + " n=" + std::to_string(row.sig.n()) + " " +
                          std::string(to_string(cell.level)) + ": " + cell.note);
      }
      os << line << "\n";
    }
  }
  os << "\nLegend: Constructed = explicit construction, verified; Search = found by search, verified;\n"
        "Certified = qualitative search exhausted up to m = 3(n+1); Theorem = excluded by a nonexistence result;\n"
        "OutOfScope = no construction provided and finite search inconclusive; Unknown = budget exhausted;\n"
        "! = construction dispatch and search disagree.\n\nNotes:\n";
  for (const auto& note : notes) os << "  " << note << "\n";
  return os.str();
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representations of chromatic relation algebras as edge colourings of complete graphs", "chromatic"};
  app.footer(help_footer());
  app.require_subcommand(1);

  std::string s_text;
  int n = 0;
  std::string level_text = "qualitative";
  std::string out_path, dot_path, in_path, transcript_path, triple_text;
  std::uint64_t budget = 0;
  int max_m = 0, m = 0, threads = 1, max_n = 6, walecki_n = 0;
  bool strict = false;

  auto add_sig = [&](CLI::App* sub) {
    sub->add_option("--s", s_text, "allowed triangle sizes, e.g. 1,3 (empty or 'none' for the empty set)")
        ->required();
    sub->add_option("--n", n, "number of proper colours")->required()->check(CLI::Range(1, max_colours));
  };
  auto add_level = [&](CLI::App* sub) {
    sub->add_option("--level", level_text, "feeble | qualitative | strong")->capture_default_str();
  };

  auto* construct_cmd = app.add_subcommand("construct", "build an explicit representation");
  add_sig(construct_cmd);
  add_level(construct_cmd);
  construct_cmd->add_option("--out", out_path, "write colouring JSON to a file");
  construct_cmd->add_option("--dot", dot_path, "write Graphviz DOT to a file");
  construct_cmd->add_option("--budget-nodes", budget, "node budget when falling back to search");

  auto* verify_cmd = app.add_subcommand("verify", "check a colouring JSON file");
  verify_cmd->add_option("--in", in_path, "colouring JSON")->required();
  add_sig(verify_cmd);
  add_level(verify_cmd);

  auto* search_cmd = app.add_subcommand("search", "exhaustive search over K_m, m = 2..max-m");
  add_sig(search_cmd);
  add_level(search_cmd);
  search_cmd->add_option("--max-m", max_m, "largest m to try (default 3(n+1))")->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--budget-nodes", budget, "abort after this many nodes (0: unlimited)");
  search_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--strict-determinism", strict, "single worker, fixed branching order");
  search_cmd->add_option("--out", out_path, "write the colouring found to a file");
  search_cmd->add_option("--dot", dot_path, "write the colouring found as DOT");
  search_cmd->add_option("--transcript", transcript_path, "write one JSON line per m");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "all representations on K_m up to isomorphism");
  add_sig(enumerate_cmd);
  add_level(enumerate_cmd);
  enumerate_cmd->add_option("--m", m, "number of vertices")->required()->check(CLI::Range(1, 64));
  enumerate_cmd->add_option("--budget-nodes", budget, "abort after this many nodes (0: unlimited)");
  enumerate_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  enumerate_cmd->add_flag("--strict-determinism", strict, "single worker, fixed branching order");

  auto* witness_cmd = app.add_subcommand("witness", "triangle of the Walecki colouring with given side colours");
  witness_cmd->add_option("--walecki-n", walecki_n, "number of colours")->required()->check(CLI::Range(1, 32));
  witness_cmd->add_option("--triple", triple_text, "i,j,k with i < j: sides coloured i, j and k")->required();

  auto* export_cmd = app.add_subcommand("export", "write atom structures, Cayley tables, geometries or DOT");
  export_cmd->require_subcommand(1);
  auto* export_atoms = export_cmd->add_subcommand("atoms", "atom structure of E_{n+1}^S as JSON");
  add_sig(export_atoms);
  int cayley_n = 0;
  auto* export_cayley = export_cmd->add_subcommand("cayley", "Cayley table as JSON");
  export_cayley->add_option("--n", cayley_n, "standard quasigroup Q_n (odd n)");
  export_cayley->add_option("--in", in_path, "read the quasigroup off a {3} colouring on n+1 vertices");
  int affine_p = 0, drop_k = 0, pencil_n = 0;
  auto* export_geometry = export_cmd->add_subcommand("geometry", "linear space with parallelism as JSON");
  export_geometry->add_option("--affine", affine_p, "affine plane AG(2,p), p prime");
  export_geometry->add_option("--drop", drop_k, "delete the first k points of the affine plane")
      ->check(CLI::NonNegativeNumber);
  export_geometry->add_option("--near-pencil", pencil_n, "near pencil with n lines");
  export_geometry->add_option("--in", in_path, "read the geometry off a colouring");
  auto* export_dot = export_cmd->add_subcommand("dot", "colouring JSON to Graphviz DOT");
  export_dot->add_option("--in", in_path, "colouring JSON")->required();
  for (auto* sub : {export_atoms, export_cayley, export_geometry, export_dot})
    sub->add_option("--out", out_path, "write to a file instead of stdout");

  auto* table_cmd = app.add_subcommand("table", "recompute the representability table");
  table_cmd->add_option("--max-n", max_n, "largest n")->check(CLI::Range(1, 12))->capture_default_str();
  table_cmd->add_option("--budget-nodes", budget, "node budget per cell");
  table_cmd->add_flag("--strict-determinism", strict, "accepted for symmetry; the table is always sequential");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  auto emit = [&](const std::string& text) {
    if (out_path.empty())
      out << text;
    else
      detail::write_file(out_path, text);
  };

  try {
    if (*construct_cmd) {
      const Signature sig = detail::make_signature(s_text, n);
      const Level level = detail::make_level(level_text);
      if (construct_cmd->count("--budget-nodes") == 0) budget = detail::budget_from_env(0);
      const ConstructionResult r = construct({sig, level});
      if (const auto* c = std::get_if<Constructed>(&r)) {
        detail::emit_colouring(out, c->colouring, sig, out_path, dot_path);
        err << "constructed K_" << c->colouring.vertex_count() << " (" << c->method << ")\n";
        return exit_ok;
      }
      if (const auto* nc = std::get_if<NotConstructible>(&r)) {
        err << "not constructible: " << nc->reason << "\n";
        return exit_not_constructible;
      }
      SearchOptions opts;
      opts.level = level;
      opts.limits.max_nodes = budget;
      const SearchOutcome s = search(sig, opts);
      if (s.status == SearchStatus::found) {
        detail::emit_colouring(out, *s.colouring, sig, out_path, dot_path);
        err << "found by search on K_" << s.colouring->vertex_count() << "\n";
        return exit_ok;
      }
      if (s.status == SearchStatus::aborted) {
        err << "budget exhausted after " << s.nodes << " nodes; none up to m=" << s.exhausted_up_to << "\n";
        return exit_budget;
      }
      err << "not constructible: search exhausted up to m=" << s.exhausted_up_to << "\n";
      return exit_not_constructible;
    }

    if (*verify_cmd) {
      const Signature sig = detail::make_signature(s_text, n);
      const Level level = detail::make_level(level_text);
      const auto loaded = detail::load_colouring(in_path);
      if (loaded.colouring.colour_count() != n)
        throw detail::UsageError("file has n=" + std::to_string(loaded.colouring.colour_count()) +
                                 " but --n is " + std::to_string(n));
      const VerificationReport r = verify(loaded.colouring, sig, level);
      detail::print_report(out, r, sig, level);
      return r.passed ? exit_ok : exit_verify_failed;
    }

    if (*search_cmd) {
      const Signature sig = detail::make_signature(s_text, n);
      SearchOptions opts;
      opts.level = detail::make_level(level_text);
      opts.max_m = max_m;
      opts.threads = threads;
      opts.strict_determinism = strict;
      opts.limits.max_nodes = search_cmd->count("--budget-nodes") ? budget : detail::budget_from_env(0);
      const SearchOutcome s = search(sig, opts);
      if (!transcript_path.empty()) detail::write_file(transcript_path, io::transcript_jsonl(sig, opts.level, s));
      if (s.status == SearchStatus::found) {
        out << "found on m=" << s.colouring->vertex_count() << "\n";
        if (!out_path.empty() || !dot_path.empty())
          detail::emit_colouring(out, *s.colouring, sig, out_path, dot_path);
        else
          out << io::dump(io::colouring_to_json(*s.colouring, sig));
        return exit_ok;
      }
      if (s.status == SearchStatus::aborted) {
        out << "budget exhausted after " << s.nodes << " nodes; none up to m=" << s.exhausted_up_to << "\n";
        return exit_budget;
      }
      if (s.certifies_nonexistence(sig, opts.level))
        out << "certified nonexistent up to m=" << s.exhausted_up_to << "\n";
      else
        out << "none up to m=" << s.exhausted_up_to << "\n";
      return exit_ok;
    }

    if (*enumerate_cmd) {
      const Signature sig = detail::make_signature(s_text, n);
      SearchOptions opts;
      opts.threads = threads;
      opts.strict_determinism = strict;
      opts.limits.max_nodes = enumerate_cmd->count("--budget-nodes") ? budget : detail::budget_from_env(0);
      const EnumerationResult r = enumerate(sig, detail::make_level(level_text), m, opts);
      for (const auto& g : r.colourings) out << io::colouring_to_json(g, sig).dump() << "\n";
      err << r.colourings.size() << " colouring(s) up to isomorphism\n";
      if (r.partial) {
        err << "budget exhausted; the list is incomplete\n";
        return exit_budget;
      }
      return exit_ok;
    }

    if (*witness_cmd) {
      const auto t = detail::parse_int_list(triple_text, 3);
      std::array<Vertex, 3> v;
      try {
        v = walecki_witness(walecki_n, t[0], t[1], t[2]);
      } catch (const std::invalid_argument& e) {
        throw detail::UsageError(e.what());
      }
      const EdgeColouring g = walecki(walecki_n);
      io::json doc;
      doc["n"] = walecki_n;
      doc["triple"] = t;
      doc["vertices"] = v;
      doc["colours"] = {g.colour(v[0], v[1]), g.colour(v[0], v[2]), g.colour(v[1], v[2])};
      out << io::dump(doc);
      return exit_ok;
    }

    if (*export_atoms) {
      emit(io::dump(io::atoms_to_json(chromatic_atoms(detail::make_signature(s_text, n)))));
      return exit_ok;
    }
    if (*export_cayley) {
      const bool from_file = export_cayley->count("--in") > 0;
      if (from_file == (export_cayley->count("--n") > 0)) throw detail::UsageError("give exactly one of --n and --in");
      Quasigroup q;
      try {
        q = from_file ? quasigroup_from_colouring(detail::load_colouring(in_path).colouring) : standard_qn(cayley_n);
      } catch (const std::invalid_argument& e) {
        throw detail::UsageError(e.what());
      }
      emit(io::dump(io::quasigroup_to_json(q)));
      return exit_ok;
    }
    if (*export_geometry) {
      const int sources = (export_geometry->count("--affine") > 0) + (export_geometry->count("--near-pencil") > 0) +
                          (export_geometry->count("--in") > 0);
      if (sources != 1) throw detail::UsageError("give exactly one of --affine, --near-pencil and --in");
      Geometry geo;
      try {
        if (export_geometry->count("--affine")) {
          geo = affine_plane(affine_p);
          if (drop_k > 0) {
            std::vector<Point> d;
            for (int k = 0; k < drop_k; ++k) d.push_back(k);
            geo = drop_points(geo, d);
          }
        } else if (export_geometry->count("--near-pencil")) {
          geo = near_pencil(pencil_n);
        } else {
          geo = linear_space_from_colouring(detail::load_colouring(in_path).colouring);
        }
      } catch (const std::invalid_argument& e) {
        throw detail::UsageError(e.what());
      }
      emit(io::dump(io::geometry_to_json(geo)));
      return exit_ok;
    }
    if (*export_dot) {
      emit(io::to_dot(detail::load_colouring(in_path).colouring));
      return exit_ok;
    }

    if (*table_cmd) {
      if (table_cmd->count("--budget-nodes") == 0) budget = detail::budget_from_env(default_table_budget);
      out << render_table(max_n, budget);
      return exit_ok;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace chromatic::cli
