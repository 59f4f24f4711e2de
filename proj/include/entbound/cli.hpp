#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entbound/bounds.hpp"
#include "entbound/graph.hpp"
#include "entbound/optimize.hpp"
#include "entbound/state.hpp"

namespace entbound {

// Bad argv shape; maps to exit code 2. Everything thrown past it while
// computing maps to exit code 1.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline const char* kUsage =
    "usage: entbound <report|mis|rank|coeffs|optimize|symmetric|verify> --graph <name-or-path>\n"
    "               [--json] [--partition <1-based,list>] [--starts N] [--seed N] [--grid N]\n";

struct Options {
  std::string command;
  std::string graph_source;
  bool json = false;
  std::optional<std::string> partition;
  OptimizerConfig cfg;
};

inline bool is_command(const std::string& s) {
  return s == "report" || s == "mis" || s == "rank" || s == "coeffs" || s == "optimize" ||
         s == "symmetric" || s == "verify";
}

inline bool is_named_source(const std::string& s) {
  return s == "petersen" || s == "code613" || s.starts_with("ring:") || s.starts_with("star:") ||
         s.starts_with("edgeless:");
}

inline long long parse_integer_flag(const std::string& flag, const std::string& value) {
  long long parsed = 0;
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), last, parsed);
  if (ec != std::errc() || ptr != last) throw usage_error("flag " + flag + " needs an integer, got: " + value);
  return parsed;
}

inline Options parse_options(const std::vector<std::string>& args) {
  if (args.empty()) throw usage_error("missing command");
  Options opt;
  opt.command = args[0];
  if (!is_command(opt.command)) throw usage_error("unknown command: " + opt.command);

  bool optimizer_flags = false;
  auto value_of = [&](std::size_t& i) -> const std::string& {
    if (i + 1 >= args.size()) throw usage_error("flag " + args[i] + " needs a value");
    return args[++i];
  };
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--graph") {
      opt.graph_source = value_of(i);
    } else if (a == "--json") {
      opt.json = true;
    } else if (a == "--partition") {
      opt.partition = value_of(i);
    } else if (a == "--starts") {
      opt.cfg.starts = static_cast<int>(parse_integer_flag(a, value_of(i)));
      optimizer_flags = true;
    } else if (a == "--seed") {
      opt.cfg.seed = static_cast<std::uint64_t>(parse_integer_flag(a, value_of(i)));
      optimizer_flags = true;
    } else if (a == "--grid") {
      const int grid = static_cast<int>(parse_integer_flag(a, value_of(i)));
      opt.cfg.grid_p = grid;
      opt.cfg.grid_phi = grid;
      optimizer_flags = true;
    } else {
      throw usage_error("unknown flag: " + a);
    }
  }

  if (opt.graph_source.empty()) throw usage_error("missing --graph");
  if (opt.partition && opt.command != "rank") throw usage_error("--partition is only valid with rank");
  const bool runs_optimizer = opt.command == "report" || opt.command == "optimize" || opt.command == "symmetric";
  if (optimizer_flags && !runs_optimizer)
    throw usage_error("--starts/--seed/--grid are only valid with report, optimize, or symmetric");
  return opt;
}

inline Graph load_graph_source(const std::string& source) {
  if (is_named_source(source)) return named_graph(source);
  std::ifstream file(source, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open graph file: " + source);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_graph(buf.str());
}

// Comma-separated 1-based vertex labels, e.g. "1,4,5".
inline VertexSet parse_partition_list(const std::string& text, const Graph& g) {
  VertexSet side;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? text.size() - pos : comma - pos);
    pos = (comma == std::string::npos) ? text.size() + 1 : comma + 1;
    int label = 0;
    if (!detail::parse_int(token, label)) throw usage_error("malformed --partition entry: '" + token + "'");
    if (label < 1 || label > g.vertex_count())
      throw std::invalid_argument("partition vertex out of range: " + token);
    if (side.contains(label - 1)) throw usage_error("duplicate vertex in --partition: " + token);
    side = side.with(label - 1);
  }
  return side;
}

// --- formatting -------------------------------------------------------------

inline std::string num12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string num6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string json_vertices(VertexSet s) {
  std::string out = "[";
  bool first = true;
  for (int v : s.to_vertices()) {
    if (!first) out += ',';
    out += std::to_string(v + 1);
    first = false;
  }
  return out + "]";
}

inline std::string json_graph(const Graph& g) {
  std::string out = "{\"n\":" + std::to_string(g.vertex_count()) + ",\"edges\":[";
  bool first = true;
  for (auto [a, b] : g.edges()) {
    if (!first) out += ',';
    out += "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
    first = false;
  }
  return out + "]}";
}

inline std::string json_strings(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += "\"" + items[i] + "\"";
  }
  return out + "]";
}

// --- commands ---------------------------------------------------------------

inline void cmd_report(const Graph& g, const Options& opt, std::ostream& out) {
  const BoundsReport rep = entanglement_bounds_report(g, opt.cfg);
  if (opt.json) {
    std::string j = "{\"graph\":" + json_graph(g);
    j += ",\"lower\":{\"ebits\":" + std::to_string(rep.lower.ebits) + ",\"side\":" + json_vertices(rep.lower.side) + "}";
    j += ",\"upper\":{\"mis\":" + std::to_string(rep.mis_upper);
    j += ",\"symmetric\":{\"F\":" + num12(rep.symmetric.fidelity) + ",\"E\":" + num12(rep.symmetric.entanglement_bound) +
         ",\"p\":" + num12(rep.symmetric.symmetric_point->p) + ",\"phi\":" + num12(rep.symmetric.symmetric_point->phi) + "}";
    if (rep.general)
      j += ",\"general\":{\"F\":" + num12(rep.general->fidelity) + ",\"E\":" + num12(rep.general->entanglement_bound) + "}";
    else
      j += ",\"general\":null";
    j += "}";
    j += ",\"exact\":" + (rep.entanglement_exact ? std::to_string(*rep.entanglement_exact) : std::string("null"));
    j += ",\"conjecture_flags\":" + json_strings(rep.conjecture_flags) + "}";
    out << j << "\n";
    return;
  }
  out << "graph: n=" << g.vertex_count() << " edges=" << g.edge_count() << "\n";
  out << "lower: ebits=" << rep.lower.ebits << " side=" << to_1based_string(rep.lower.side) << "\n";
  out << "upper: mis=" << rep.mis_upper << " (independent set " << to_1based_string(rep.mis.witness) << ")\n";
  out << "symmetric: F=" << num12(rep.symmetric.fidelity) << " E=" << num6(rep.symmetric.entanglement_bound)
      << " p=" << num6(rep.symmetric.symmetric_point->p) << " phi=" << num6(rep.symmetric.symmetric_point->phi) << "\n";
  if (rep.general)
    out << "general: F=" << num12(rep.general->fidelity) << " E=" << num6(rep.general->entanglement_bound) << "\n";
  if (rep.entanglement_exact)
    out << "entanglement: " << *rep.entanglement_exact << " (exact)\n";
  else
    out << "entanglement: in [" << rep.lower.ebits << ", " << num6(rep.best_upper) << "]\n";
  if (!rep.conjecture_flags.empty()) {
    out << "conjecture flags:";
    for (const auto& f : rep.conjecture_flags) out << " " << f;
    out << "\n";
  }
}

inline void cmd_mis(const Graph& g, const Options& opt, std::ostream& out) {
  const MisResult res = max_independent_set(g);
  const int upper = g.vertex_count() - res.size;
  if (opt.json) {
    out << "{\"graph\":" << json_graph(g) << ",\"size\":" << res.size << ",\"witness\":" << json_vertices(res.witness)
        << ",\"upper_bound\":" << upper << "}\n";
    return;
  }
  out << "size: " << res.size << "\n";
  out << "witness: " << to_1based_string(res.witness) << "\n";
  out << "upper bound: " << upper << "\n";
}

inline void cmd_rank(const Graph& g, const Options& opt, std::ostream& out) {
  BipartitionResult res;
  if (opt.partition)
    res = bipartite_entanglement(g, parse_partition_list(*opt.partition, g));
  else
    res = best_bipartite_lower_bound(g);
  if (opt.json) {
    out << "{\"graph\":" << json_graph(g) << ",\"side\":" << json_vertices(res.side) << ",\"ebits\":" << res.ebits
        << "}\n";
    return;
  }
  out << res.ebits << "\n";
}

inline void cmd_coeffs(const Graph& g, const Options& opt, std::ostream& out) {
  const CoeffVector c = symmetric_coefficients(g);
  if (opt.json) {
    std::string j = "{\"graph\":" + json_graph(g) + ",\"coefficients\":[";
    for (int i = 0; i <= c.degree(); ++i) {
      if (i) j += ',';
      j += std::to_string(c[i]);
    }
    out << j << "]}\n";
    return;
  }
  for (int i = 0; i <= c.degree(); ++i) out << (i ? " " : "") << c[i];
  out << "\n";
}

inline void cmd_symmetric(const Graph& g, const Options& opt, std::ostream& out) {
  const OptimumResult res = optimize_symmetric(g, opt.cfg);
  if (g.vertex_count() <= kMaxExhaustiveBipartitions)
    enforce_fidelity_ceiling(res.fidelity, best_bipartite_lower_bound(g).ebits);
  if (opt.json) {
    out << "{\"graph\":" << json_graph(g) << ",\"F\":" << num12(res.fidelity) << ",\"E\":" << num12(res.entanglement_bound)
        << ",\"p\":" << num12(res.symmetric_point->p) << ",\"phi\":" << num12(res.symmetric_point->phi)
        << ",\"iterations\":" << res.iterations << ",\"converged\":" << (res.converged ? "true" : "false") << "}\n";
    return;
  }
  out << "F=" << num12(res.fidelity) << " E=" << num6(res.entanglement_bound) << " p=" << num6(res.symmetric_point->p)
      << " phi=" << num6(res.symmetric_point->phi) << " iterations=" << res.iterations
      << " converged=" << (res.converged ? "yes" : "no") << "\n";
}

inline void cmd_optimize(const Graph& g, const Options& opt, std::ostream& out) {
  const OptimumResult res = optimize_product_fidelity(g, opt.cfg);
  if (g.vertex_count() <= kMaxExhaustiveBipartitions)
    enforce_fidelity_ceiling(res.fidelity, best_bipartite_lower_bound(g).ebits);
  if (opt.json) {
    std::string p = "[", phi = "[";
    for (int a = 0; a < res.state.qubit_count(); ++a) {
      if (a) {
        p += ',';
        phi += ',';
      }
      p += num12(res.state.p(a));
      phi += num12(res.state.phi(a));
    }
    out << "{\"graph\":" << json_graph(g) << ",\"F\":" << num12(res.fidelity) << ",\"E\":" << num12(res.entanglement_bound)
        << ",\"p\":" << p << "],\"phi\":" << phi << "],\"iterations\":" << res.iterations
        << ",\"converged\":" << (res.converged ? "true" : "false") << "}\n";
    return;
  }
  out << "F=" << num12(res.fidelity) << " E=" << num6(res.entanglement_bound) << " iterations=" << res.iterations
      << " converged=" << (res.converged ? "yes" : "no") << " (upper bound only, not certified)\n";
  for (int a = 0; a < res.state.qubit_count(); ++a)
    out << "qubit " << (a + 1) << ": p=" << num6(res.state.p(a)) << " phi=" << num6(res.state.phi(a)) << "\n";
}

inline int cmd_verify(const Graph& g, const Options& opt, std::ostream& out) {
  int failed = -1;
  for (int a = 0; a < g.vertex_count() && failed < 0; ++a)
    if (!verify_stabilizer(g, a)) failed = a;
  if (opt.json) {
    out << "{\"graph\":" << json_graph(g) << ",\"stabilizers_ok\":" << (failed < 0 ? "true" : "false")
        << ",\"checked\":" << g.vertex_count() << "}\n";
  } else if (failed < 0) {
    out << "stabilizers ok: " << g.vertex_count() << "/" << g.vertex_count() << "\n";
  } else {
    out << "stabilizer check failed at vertex " << (failed + 1) << "\n";
  }
  return failed < 0 ? 0 : 1;
}

}  // namespace cli_detail

// Runs one CLI invocation. Exit codes: 0 success, 2 usage error, 1
// computational error. JSON mode writes exactly one object to `out`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  try {
    const Options opt = parse_options(args);
    const Graph g = load_graph_source(opt.graph_source);
    if (opt.command == "report") {
      cmd_report(g, opt, out);
    } else if (opt.command == "mis") {
      cmd_mis(g, opt, out);
    } else if (opt.command == "rank") {
      cmd_rank(g, opt, out);
    } else if (opt.command == "coeffs") {
      cmd_coeffs(g, opt, out);
    } else if (opt.command == "optimize") {
      cmd_optimize(g, opt, out);
    } else if (opt.command == "symmetric") {
      cmd_symmetric(g, opt, out);
    } else {
      return cmd_verify(g, opt, out);
    }
    return 0;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n" << cli_detail::kUsage;
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace entbound
