#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cgh/arrangement.hpp"
#include "cgh/chain_complex.hpp"
#include "cgh/errors.hpp"
#include "cgh/graph_complex.hpp"
#include "cgh/partition_complex.hpp"
#include "cgh/tree_basis.hpp"
#include "complex_cache.hpp"

namespace {

struct RunConfig {
  std::string mode = "mod-p";
  std::int64_t prime = cgh::default_prime;
  std::string format = "json";
  std::string cache_dir;
  cgh::Index face_budget = 0;  // 0 keeps the builder default

  cgh::HomologyOptions homology_options() const {
    cgh::HomologyOptions opt;
    opt.mode = mode == "exact" ? cgh::HomologyMode::exact
                               : cgh::HomologyMode::mod_p;
    opt.prime = prime;
    return opt;
  }

  std::optional<std::filesystem::path> cache_path() const {
    if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
    if (const char* env = std::getenv("CGH_CACHE_DIR"); env && *env)
      return std::filesystem::path(env);
    return std::nullopt;
  }
};

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mode", cfg.mode, "homology mode")
      ->check(CLI::IsMember({"mod-p", "exact"}))
      ->capture_default_str();
  cmd->add_option("--p", cfg.prime, "prime modulus for mod-p mode")
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  cmd->add_option("--cache-dir", cfg.cache_dir,
                  "complex cache directory (default: $CGH_CACHE_DIR; "
                  "caching is off when neither is set)");
  cmd->add_option("--face-budget", cfg.face_budget,
                  "per-dimension candidate budget for complex builders");
}

std::string torsion_list(const cgh::DimensionSummary& dim,
                         const char* separator) {
  std::string out;
  for (std::size_t i = 0; i < dim.torsion.size(); ++i) {
    if (i) out += separator;
    out += dim.torsion[i].str();
  }
  return out;
}

void print_summary(const cgh::ChainComplex& cx,
                   const cgh::HomologySummary& summary,
                   const RunConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << cgh::to_json(summary) << "\n";
    return;
  }
  if (cfg.format == "csv") {
    std::cout << "dim,betti,torsion\n";
    for (std::size_t d = 0; d < summary.dims.size(); ++d)
      std::cout << d << "," << summary.dims[d].betti << ","
                << torsion_list(summary.dims[d], ";") << "\n";
    return;
  }
  std::cout << cx.name << "  (" << cx.total_faces() << " faces, mode="
            << cfg.mode;
  if (summary.mode == cgh::HomologyMode::mod_p)
    std::cout << ", p=" << summary.prime;
  std::cout << ")\n";
  std::cout << "dim  betti  torsion\n";
  for (std::size_t d = 0; d < summary.dims.size(); ++d) {
    const std::string torsion = torsion_list(summary.dims[d], " ");
    std::cout << std::setw(3) << d << "  " << std::setw(5)
              << summary.dims[d].betti << "  "
              << (torsion.empty() ? "-" : torsion) << "\n";
  }
}

int run_homology(const std::string& family, int k, int t,
                 const std::vector<int>& sizes, const RunConfig& cfg) {
  std::string key = family + "-";
  if (family == "colored") {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      key += (i ? "_" : "") + std::to_string(sizes[i]);
  } else if (family == "uniform") {
    key += std::to_string(k) + "_" + std::to_string(t);
  } else {
    key += std::to_string(k);
  }

  cgh::GraphLimits graph_limits;
  cgh::PartitionLimits partition_limits;
  if (cfg.face_budget > 0) {
    graph_limits.layer_budget = cfg.face_budget;
    partition_limits.layer_budget = cfg.face_budget;
  }

  const auto cache_dir = cfg.cache_path();
  std::optional<cgh::ChainComplex> cx;
  if (cache_dir) cx = cgh::cache::load(*cache_dir, key);
  if (!cx) {
    if (family == "graphs") cx = cgh::build_K(k, graph_limits);
    else if (family == "disconnected") cx = cgh::build_M(k, graph_limits);
    else if (family == "partitions") cx = cgh::build_C(k, partition_limits);
    else if (family == "omega") cx = cgh::build_Omega(k, partition_limits);
    else if (family == "colored") cx = cgh::build_colored_K(sizes, graph_limits);
    else cx = cgh::build_uniform_K(k, t, graph_limits);
    if (cache_dir) cgh::cache::store(*cache_dir, key, *cx);
  }
  const cgh::HomologySummary summary =
      cgh::homology(*cx, cfg.homology_options());
  print_summary(*cx, summary, cfg);
  return 0;
}

int run_arrangement(const std::string& input, int braid_k,
                    const RunConfig& cfg) {
  std::vector<cgh::AffinePlane> planes;
  if (braid_k > 0) {
    planes = cgh::braid_arrangement(braid_k);
  } else {
    std::ifstream in(input);
    if (!in)
      throw std::invalid_argument("cannot open input file '" + input + "'");
    std::ostringstream text;
    text << in.rdbuf();
    planes = cgh::parse_arrangement(text.str());
  }
  const cgh::GMTable table =
      cgh::assemble_gm(planes, cfg.homology_options());
  if (cfg.format == "json") {
    std::cout << cgh::to_json(table) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "dim,betti\n";
    for (std::size_t i = 0; i < table.complement_betti.size(); ++i)
      std::cout << i << "," << table.complement_betti[i] << "\n";
  } else {
    std::cout << planes.size() << " planes in R^" << table.ambient_dim << ", "
              << table.flats.size() << " flats\n";
    for (const cgh::FlatEntry& entry : table.flats) {
      std::cout << "flat dim " << entry.flat.plane.dim() << "  J = {";
      for (std::size_t i = 0; i < entry.flat.j_prime.size(); ++i)
        std::cout << (i ? "," : "") << entry.flat.j_prime[i];
      std::cout << "}  betti:";
      bool any = false;
      for (std::size_t d = 0; d < entry.homology.dims.size(); ++d)
        if (entry.homology.dims[d].betti != 0) {
          std::cout << " " << d << ":" << entry.homology.dims[d].betti;
          any = true;
        }
      std::cout << (any ? "" : " none") << "\n";
    }
    std::cout << "complement betti:";
    for (cgh::Index b : table.complement_betti) std::cout << " " << b;
    std::cout << "\n";
  }
  return 0;
}

void check_tree_k(int k) {
  if (k < 3 || k > 6)
    throw std::invalid_argument("k must be between 3 and 6 for tree commands");
}

int run_tree_basis(int k, const RunConfig& cfg) {
  check_tree_k(k);
  const std::vector<cgh::LinearTree> basis = cgh::linear_normed_trees(k);
  if (cfg.format == "json") {
    std::string out = "{\"k\":" + std::to_string(k) +
                      ",\"count\":" + std::to_string(basis.size()) +
                      ",\"paths\":[";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < basis[i].path.size(); ++j)
        out += (j ? "," : "") + std::to_string(basis[i].path[j]);
      out += "]";
    }
    std::cout << out << "]}\n";
  } else if (cfg.format == "csv") {
    std::cout << "index,path\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::cout << i << ",";
      for (std::size_t j = 0; j < basis[i].path.size(); ++j)
        std::cout << (j ? "-" : "") << basis[i].path[j];
      std::cout << "\n";
    }
  } else {
    std::cout << basis.size() << " paths:\n";
    for (const cgh::LinearTree& t : basis) {
      for (std::size_t j = 0; j < t.path.size(); ++j)
        std::cout << (j ? "-" : "") << t.path[j];
      std::cout << "\n";
    }
  }
  return 0;
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("edge '" + item +
                                  "' is not of the form a-b");
    try {
      edges.emplace_back(std::stoi(item.substr(0, dash)),
                         std::stoi(item.substr(dash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("edge '" + item +
                                  "' is not of the form a-b");
    }
  }
  if (edges.empty())
    throw std::invalid_argument("no edges given; use --edges 1-2,2-3,...");
  return edges;
}

int run_reduce_tree(int k, const std::string& edges_text,
                    const std::string& tie_break, const RunConfig& cfg) {
  check_tree_k(k);
  const cgh::Tree tree = cgh::Tree::from_edges(k, parse_edge_list(edges_text));
  const cgh::TieBreak tb = tie_break == "largest" ? cgh::TieBreak::largest
                                                  : cgh::TieBreak::smallest;
  const cgh::TreeChain chain = cgh::reduce_tree(tree, tb);
  const cgh::CertificateCheck check = cgh::verify_certificate(tree, chain);
  if (!check.ok) {
    std::cerr << "error: " << check.message << "\n";
    return 1;
  }

  const cgh::EdgeUniverse universe = cgh::EdgeUniverse::complete(k);
  auto edges_of = [&](std::uint64_t mask) {
    std::vector<std::string> out;
    for (int g = 0; mask; ++g, mask >>= 1)
      if (mask & 1) out.push_back(universe.names[g]);
    return out;
  };

  if (cfg.format == "json") {
    std::string out = "{\"k\":" + std::to_string(k) + ",\"tree\":[";
    const std::vector<std::string> tree_edges = edges_of(tree.edges);
    for (std::size_t i = 0; i < tree_edges.size(); ++i)
      out += (i ? ",\"" : "\"") + tree_edges[i] + "\"";
    out += "],\"coefficients\":[";
    bool first = true;
    for (const auto& [mask, c] : chain.coefficients) {
      out += first ? "{" : ",{";
      first = false;
      out += "\"edges\":[";
      const std::vector<std::string> edges = edges_of(mask);
      for (std::size_t i = 0; i < edges.size(); ++i)
        out += (i ? ",\"" : "\"") + edges[i] + "\"";
      out += "],\"coefficient\":" + c.str() + "}";
    }
    out += "],\"certificate\":[";
    first = true;
    for (const auto& [mask, c] : chain.certificate) {
      out += first ? "{" : ",{";
      first = false;
      out += "\"edges\":[";
      const std::vector<std::string> edges = edges_of(mask);
      for (std::size_t i = 0; i < edges.size(); ++i)
        out += (i ? ",\"" : "\"") + edges[i] + "\"";
      out += "],\"coefficient\":" + c.str() + "}";
    }
    out += "],\"verified\":true}";
    std::cout << out << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "kind,edges,coefficient\n";
    for (const auto& [mask, c] : chain.coefficients) {
      std::cout << "path,";
      const std::vector<std::string> edges = edges_of(mask);
      for (std::size_t i = 0; i < edges.size(); ++i)
        std::cout << (i ? ";" : "") << edges[i];
      std::cout << "," << c.str() << "\n";
    }
    for (const auto& [mask, c] : chain.certificate) {
      std::cout << "certificate,";
      const std::vector<std::string> edges = edges_of(mask);
      for (std::size_t i = 0; i < edges.size(); ++i)
        std::cout << (i ? ";" : "") << edges[i];
      std::cout << "," << c.str() << "\n";
    }
  } else {
    std::cout << "tree:";
    for (const std::string& e : edges_of(tree.edges)) std::cout << " " << e;
    std::cout << "\nreduces to " << chain.coefficients.size()
              << " basis paths (verified):\n";
    for (const auto& [mask, c] : chain.coefficients) {
      std::cout << "  " << c.str() << " *";
      for (const std::string& e : edges_of(mask)) std::cout << " " << e;
      std::cout << "\n";
    }
    std::cout << "certificate has " << chain.certificate.size()
              << " faces\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology of connected-graph complexes and plane arrangements"};
  app.require_subcommand(1);
  RunConfig cfg;

  // homology <family>
  auto* homology_cmd =
      app.add_subcommand("homology", "Betti numbers of a built-in complex");
  std::string family;
  int k = 0, t = 2;
  std::vector<int> sizes;
  homology_cmd
      ->add_option("family", family,
                   "graphs | disconnected | partitions | omega | colored | "
                   "uniform")
      ->required()
      ->check(CLI::IsMember({"graphs", "disconnected", "partitions", "omega",
                             "colored", "uniform"}));
  homology_cmd->add_option("--k", k, "number of vertices");
  homology_cmd->add_option("--t", t, "member size for the uniform family");
  homology_cmd->add_option("--sizes", sizes,
                           "part sizes for the colored family (e.g. 2,2,1)")
      ->delimiter(',');
  add_run_options(homology_cmd, cfg);

  // arrangement
  auto* arrangement_cmd = app.add_subcommand(
      "arrangement", "flat-by-flat homology table of a plane arrangement");
  std::string input;
  int braid_k = 0;
  arrangement_cmd->add_option("--input", input, "arrangement JSON file");
  arrangement_cmd->add_option("--braid", braid_k,
                              "use the complexified braid arrangement on k "
                              "coordinates");
  add_run_options(arrangement_cmd, cfg);

  // tree-basis
  auto* basis_cmd =
      app.add_subcommand("tree-basis", "the path basis of the top homology");
  int basis_k = 0;
  basis_cmd->add_option("--k", basis_k, "number of vertices")->required();
  add_run_options(basis_cmd, cfg);

  // reduce-tree
  auto* reduce_cmd = app.add_subcommand(
      "reduce-tree", "rewrite a spanning tree in the path basis");
  int reduce_k = 0;
  std::string edges_text, tie_break = "smallest";
  reduce_cmd->add_option("--k", reduce_k, "number of vertices")->required();
  reduce_cmd->add_option("--edges", edges_text, "edge list, e.g. 1-2,2-3,3-4")
      ->required();
  reduce_cmd->add_option("--tie-break", tie_break, "neighbor choice")
      ->check(CLI::IsMember({"smallest", "largest"}));
  add_run_options(reduce_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (homology_cmd->parsed()) {
      if (family == "colored") {
        if (sizes.empty())
          throw std::invalid_argument(
              "the colored family needs --sizes, e.g. --sizes 2,2,1");
      } else if (k <= 0) {
        throw std::invalid_argument("--k is required and must be positive");
      }
      return run_homology(family, k, t, sizes, cfg);
    }
    if (arrangement_cmd->parsed()) {
      if ((input.empty()) == (braid_k == 0))
        throw std::invalid_argument(
            "give exactly one of --input FILE or --braid K");
      return run_arrangement(input, braid_k, cfg);
    }
    if (basis_cmd->parsed()) return run_tree_basis(basis_k, cfg);
    if (reduce_cmd->parsed())
      return run_reduce_tree(reduce_k, edges_text, tie_break, cfg);
  } catch (const cgh::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
