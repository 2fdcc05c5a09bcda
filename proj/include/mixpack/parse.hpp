#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mixpack/errors.hpp"
#include "mixpack/mixed_graph.hpp"

namespace mixpack {

/// The line-based input format, as printed by `--help`.
inline constexpr std::string_view kInputGrammar =
    "Input format (one declaration per line; '#' starts a comment; blank lines ignored):\n"
    "  vertex <id>\n"
    "  edge <id1> <id2> [<edge-id>]\n"
    "  arc <tail-id> <head-id> [<arc-id>]\n"
    "  root <id>\n"
    "Missing edge/arc ids are assigned \"e<n>\"/\"a<n>\" in file order.\n"
    "Roots listed in order define indices 1..k; a vertex may be listed as a root more than once.\n";

struct Instance {
  MixedGraph graph;
  std::vector<VertexIndex> roots;
};

inline Instance parse_mixed_graph(std::istream& in) {
  Instance inst;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t edge_count = 0;
  std::size_t arc_count = 0;

  auto lookup = [&](const std::string& name) {
    if (auto v = inst.graph.find_vertex(name)) return *v;
    throw ParseError(line_no, "unknown vertex '" + name + "'");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(std::move(w));
    if (words.empty()) continue;

    const std::string& kw = words[0];
    try {
      if (kw == "vertex") {
        if (words.size() != 2) throw ParseError(line_no, "expected 'vertex <id>'");
        inst.graph.add_vertex(words[1]);
      } else if (kw == "edge" || kw == "arc") {
        if (words.size() != 3 && words.size() != 4) {
          throw ParseError(line_no, "expected '" + kw + " <id> <id> [<" + kw + "-id>]'");
        }
        const auto a = lookup(words[1]);
        const auto b = lookup(words[2]);
        if (kw == "edge") {
          ++edge_count;
          inst.graph.add_edge(a, b, words.size() == 4 ? words[3] : "e" + std::to_string(edge_count));
        } else {
          ++arc_count;
          inst.graph.add_arc(a, b, words.size() == 4 ? words[3] : "a" + std::to_string(arc_count));
        }
      } else if (kw == "root") {
        if (words.size() != 2) throw ParseError(line_no, "expected 'root <id>'");
        if (inst.roots.size() >= RootSet::kCapacity) {
          throw CapacityError("root count", inst.roots.size() + 1, RootSet::kCapacity);
        }
        inst.roots.push_back(lookup(words[1]));
      } else {
        throw ParseError(line_no, "unknown declaration '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return inst;
}

inline Instance parse_mixed_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mixed_graph(in);
}

}  // namespace mixpack
