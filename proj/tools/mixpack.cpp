// Command-line front end: solve, validate and inspect reachability mixed
// arborescence packings.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "mixpack/dot.hpp"
#include "mixpack/json_io.hpp"
#include "mixpack/mixpack.hpp"

namespace {

using namespace mixpack;

enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kInfeasible = 2,
  kCapacity = 3,
  kRejected = 4,
  kInternal = 5,
};

struct Config {
  std::string input;
  std::string side_file;
  std::optional<std::string> format;
  std::optional<unsigned long long> seed;
  unsigned jobs = 1;
  std::size_t atom = 0;
  bool verbose = false;
  Bounds bounds;
};

bool json_output(const Config& cfg, bool json_by_default) {
  return cfg.format ? *cfg.format == "json" : json_by_default;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return parse_mixed_graph(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void print_tree_text(std::ostream& out, const MixedGraph& g, std::span<const VertexIndex> roots,
                     const MixedPacking& mp) {
  for (const auto& t : mp.trees) {
    out << "tree " << t.root_index + 1 << " root " << g.name(roots[t.root_index]) << "\n";
    for (const auto& a : t.arcs) {
      const bool native = a.origin == ArcOrigin::native_arc;
      out << "  " << (native ? g.arcs()[a.index].id : g.edges()[a.index].id) << " " << g.name(a.tail) << " "
          << g.name(a.head) << " " << (native ? "arc" : "edge") << "\n";
    }
  }
}

void print_certificate_text(std::ostream& out, const MixedGraph& g, const BiSetFamilyCertificate& cert) {
  out << "infeasible: atom " << cert.atom_index + 1 << ", " << cert.lhs << " < " << cert.rhs << "\n";
  for (const auto& x : cert.bisets) out << "  outer " << g.format(x.outer) << " inner " << g.format(x.inner) << "\n";
}

int run_solve(const Config& cfg) {
  const Instance inst = load(cfg.input);
  SolveOptions options{cfg.bounds, cfg.jobs};
  SolveStats stats;
  const SolveResult result = solve(inst.graph, inst.roots, options, &stats);
  if (cfg.verbose) {
    std::cerr << "atoms " << stats.atoms << ", descent steps " << stats.descent_steps << ", fallback atoms "
              << stats.fallback_atoms << ", search nodes " << stats.packing.search_nodes << ", backtracks "
              << stats.packing.backtracks << "\n";
  }
  const bool as_json = json_output(cfg, true);
  if (const auto* mp = std::get_if<MixedPacking>(&result)) {
    if (as_json) {
      std::cout << packing_to_json(inst.graph, inst.roots, *mp).dump(2) << "\n";
    } else {
      print_tree_text(std::cout, inst.graph, inst.roots, *mp);
    }
    return kOk;
  }
  const auto& cert = std::get<BiSetFamilyCertificate>(result);
  if (as_json) {
    std::cout << infeasible_to_json(inst.graph, cert).dump(2) << "\n";
  } else {
    print_certificate_text(std::cout, inst.graph, cert);
  }
  return kInfeasible;
}

int run_check(const Config& cfg) {
  const Instance inst = load(cfg.input);
  const MixedPacking mp = packing_from_json(inst.graph, load_json(cfg.side_file));
  if (auto why = validate_mixed_packing(inst.graph, inst.roots, mp)) {
    std::cout << "packing rejected: " << *why << "\n";
    return kRejected;
  }
  std::cout << "packing accepted\n";
  return kOk;
}

std::string sides_text(const BiSetFamilyCertificate& cert) {
  return std::to_string(cert.lhs) + " < " + std::to_string(cert.rhs) + " (deficit " +
         std::to_string(cert.rhs - cert.lhs) + ")";
}

int run_certify(const Config& cfg) {
  const Instance inst = load(cfg.input);
  const BiSetFamilyCertificate cert = certificate_from_json(inst.graph, load_json(cfg.side_file));
  const CertificateCheck check = verify_certificate(inst.graph, inst.roots, cert);
  if (!check) {
    std::cout << "certificate rejected: " << check.reason << "\n";
    return kRejected;
  }
  std::cout << "certificate accepted: " << sides_text(cert) << "\n";
  return kOk;
}

int run_atoms(const Config& cfg) {
  const Instance inst = load(cfg.input);
  const AtomDecomposition dec = compute_atoms(inst.graph, inst.roots);
  if (json_output(cfg, false)) {
    std::cout << atoms_to_json(inst.graph, dec).dump(2) << "\n";
    return kOk;
  }
  for (std::size_t j = 0; j < dec.atom_count(); ++j) {
    std::cout << j + 1 << " " << inst.graph.format(dec.atoms[j]) << " {";
    bool first = true;
    for (auto i : dec.atom_roots[j]) {
      std::cout << (first ? "" : ",") << i + 1;
      first = false;
    }
    std::cout << "}\n";
  }
  return kOk;
}

int run_orient(const Config& cfg) {
  const Instance inst = load(cfg.input);
  const AtomDecomposition dec = compute_atoms(inst.graph, inst.roots);
  if (cfg.atom < 1 || cfg.atom > dec.atom_count()) {
    throw InputError("atom " + std::to_string(cfg.atom) + " out of range 1.." + std::to_string(dec.atom_count()));
  }
  const AuxiliaryGraph aux = build_auxiliary(inst.graph, dec, cfg.atom - 1);
  const CoverRequirement req(aux, dec, inst.roots, cfg.bounds);
  OrientStats stats;
  const OrientResult result = orient_covering(req, &stats);
  if (cfg.verbose) {
    std::cerr << "descent steps " << stats.descent_steps << (stats.used_fallback ? ", fallback used" : "") << "\n";
  }
  if (const auto* sc = std::get_if<SubpartitionCertificate>(&result)) {
    std::cout << subpartition_certificate_to_json(aux, *sc).dump(2) << "\n";
    return kInfeasible;
  }
  const auto& o = std::get<Orientation>(result);
  if (json_output(cfg, false)) {
    std::cout << orientation_to_json(aux, o).dump(2) << "\n";
    return kOk;
  }
  for (std::size_t e = 0; e < o.size(); ++e) {
    std::cout << aux.graph.edges()[e].id << " " << aux.graph.name(o[e].tail) << " " << aux.graph.name(o[e].head)
              << "\n";
  }
  return kOk;
}

int run_pack_digraph(const Config& cfg) {
  const Instance inst = load(cfg.input);
  const DirectedView d = arcs_only(inst.graph);
  PackStats stats;
  const DigraphPackResult result = pack_reachability(d, inst.roots, cfg.bounds, &stats);
  if (cfg.verbose) std::cerr << "search nodes " << stats.search_nodes << ", backtracks " << stats.backtracks << "\n";
  const bool as_json = json_output(cfg, false);
  if (const auto* bad = std::get_if<VertexSet>(&result)) {
    if (as_json) {
      std::cout << json{{"format", kJsonFormat}, {"status", "infeasible"}, {"violated", vertex_names(inst.graph, *bad)}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "infeasible: violated set " << inst.graph.format(*bad) << "\n";
    }
    return kInfeasible;
  }
  const MixedPacking mp = to_mixed_packing(d, std::get<DigraphPacking>(result));
  if (as_json) {
    std::cout << packing_to_json(inst.graph, inst.roots, mp).dump(2) << "\n";
  } else {
    for (const auto& t : mp.trees) {
      std::cout << "tree " << t.root_index + 1 << " root " << inst.graph.name(inst.roots[t.root_index]) << "\n";
      for (const auto& a : t.arcs) {
        std::cout << "  " << inst.graph.arcs()[a.index].id << " " << inst.graph.name(a.tail) << " "
                  << inst.graph.name(a.head) << "\n";
      }
    }
  }
  return kOk;
}

int run_export_dot(const Config& cfg) {
  const Instance inst = load(cfg.input);
  std::optional<MixedPacking> mp;
  if (!cfg.side_file.empty()) {
    mp = packing_from_json(inst.graph, load_json(cfg.side_file));
    if (auto why = validate_mixed_packing(inst.graph, inst.roots, *mp)) {
      std::cerr << "packing rejected: " << *why << "\n";
      return kRejected;
    }
  }
  std::cout << export_dot(inst.graph, inst.roots, mp ? &*mp : nullptr);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Reachability mixed arborescence packing"};
  app.footer(std::string(kInputGrammar));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "Accepted for reproducible invocations; solving is deterministic");
  app.add_option("--jobs", cfg.jobs, "Worker threads for per-atom orientation")->check(CLI::PositiveNumber);
  app.add_option("--max-enum-vertices", cfg.bounds.max_enum_vertices, "Limit for subset enumeration")
      ->check(CLI::Range(1, 64));
  app.add_option("--max-fallback-edges", cfg.bounds.max_fallback_edges, "Limit for exhaustive orientation")
      ->check(CLI::Range(1, 62));
  app.add_option("--max-partition-vertices", cfg.bounds.max_partition_vertices, "Limit for subpartition search")
      ->check(CLI::Range(1, 64));
  app.add_flag("-v,--verbose", cfg.verbose, "Print search statistics to stderr");

  auto* solve_cmd = app.add_subcommand("solve", "Find a packing or an infeasibility certificate (JSON by default)");
  solve_cmd->add_option("input", cfg.input, "Mixed graph file")->required();

  auto* check_cmd = app.add_subcommand("check", "Validate a packing document against a graph");
  check_cmd->add_option("input", cfg.input, "Mixed graph file")->required();
  check_cmd->add_option("packing", cfg.side_file, "Packing JSON as printed by solve")->required();

  auto* atoms_cmd = app.add_subcommand("atoms", "Print the atom decomposition");
  atoms_cmd->add_option("input", cfg.input, "Mixed graph file")->required();

  auto* orient_cmd = app.add_subcommand("orient", "Orient the edges of one atom");
  orient_cmd->add_option("input", cfg.input, "Mixed graph file")->required();
  orient_cmd->add_option("--atom", cfg.atom, "Atom index, 1-based")->required();

  auto* pack_cmd = app.add_subcommand("pack-digraph", "Pack reachability arborescences in a graph without edges");
  pack_cmd->add_option("input", cfg.input, "Digraph file")->required();

  auto* certify_cmd = app.add_subcommand("certify", "Verify an infeasibility certificate");
  certify_cmd->add_option("input", cfg.input, "Mixed graph file")->required();
  certify_cmd->add_option("certificate", cfg.side_file, "Certificate JSON, bare or as printed by solve")->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "Print a Graphviz description");
  dot_cmd->add_option("input", cfg.input, "Mixed graph file")->required();
  dot_cmd->add_option("--packing", cfg.side_file, "Packing JSON whose trees are coloured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(cfg);
    if (*check_cmd) return run_check(cfg);
    if (*atoms_cmd) return run_atoms(cfg);
    if (*orient_cmd) return run_orient(cfg);
    if (*pack_cmd) return run_pack_digraph(cfg);
    if (*certify_cmd) return run_certify(cfg);
    if (*dot_cmd) return run_export_dot(cfg);
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
