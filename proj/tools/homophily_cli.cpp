// homophily: command-line front end.
//
//   homophily analyze      --graph G --coloring C [--preset all] [--nu maxdeg]
//   homophily baseline     --graph G --coloring C [--samples 5] [--seed 0]
//   homophily oracle-check --graph G (--profile 2,2 | --coloring C) [--limit N]
//   homophily toy-curve    --edges M [--out curve.csv]
//
// Exit codes: 0 success, 1 oracle check failed, 2 input error, 3 refused
// because of a resource limit.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "homophily/coloring.hpp"
#include "homophily/errors.hpp"
#include "homophily/graph.hpp"
#include "homophily/report.hpp"

namespace {

using namespace homophily;

struct Options {
  std::string graph;
  std::string coloring;
  std::string profile;
  std::string preset = "all";
  std::string nu = "maxdeg";
  std::string format = "json";
  std::string out;
  std::uint64_t samples = 5;
  std::uint64_t seed = 0;
  std::uint64_t limit = kDefaultEnumerationLimit;
  std::uint64_t edges = 500;
  bool dedupe = false;
};

IndexOptions index_options(const Options& o) {
  IndexOptions io;
  if (o.preset == "ratio") {
    io.presets = {Preset::Ratio};
  } else if (o.preset == "avgdeg") {
    io.presets = {Preset::AvgInternalDegree};
  } else if (o.preset == "dyadicity") {
    io.presets = {Preset::Dyadicity};
  }
  if (o.nu == "classes") {
    io.nu = NuChoice::Classes;
  } else if (o.nu == "avgdeg") {
    io.nu = NuChoice::AverageDegree;
  }
  return io;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError(InputError::Kind::Io, "cannot write " + o.out);
  file << text;
}

std::string render(const Options& o, const nlohmann::ordered_json& j) {
  return o.format == "tsv" ? dump_tsv(j) : dump_json(j);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homophily indices under the random coloring model"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
  };
  auto add_index_flags = [&](CLI::App* cmd) {
    cmd->add_option("--preset", o.preset, "Weight presets for j_theta")
        ->check(CLI::IsMember({"ratio", "avgdeg", "dyadicity", "all"}));
    cmd->add_option("--nu", o.nu, "Scale for the average-internal-degree preset")
        ->check(CLI::IsMember({"maxdeg", "classes", "avgdeg"}));
  };

  auto* analyze = app.add_subcommand("analyze", "Index report for a graph and a coloring");
  analyze->add_option("--graph", o.graph, "Edge-list file")->required();
  analyze->add_option("--coloring", o.coloring, "Vertex<TAB>label file")->required();
  analyze->add_flag("--dedupe", o.dedupe, "Merge duplicate edges instead of rejecting them");
  add_index_flags(analyze);
  add_common(analyze);

  auto* baseline = app.add_subcommand("baseline", "Indices over uniform random colorings of the same profile");
  baseline->add_option("--graph", o.graph, "Edge-list file")->required();
  baseline->add_option("--coloring", o.coloring, "Vertex<TAB>label file")->required();
  baseline->add_option("--samples", o.samples, "Number of random colorings")->check(CLI::PositiveNumber);
  baseline->add_option("--seed", o.seed, "First seed; sample i uses seed + i");
  baseline->add_flag("--dedupe", o.dedupe, "Merge duplicate edges instead of rejecting them");
  add_index_flags(baseline);
  add_common(baseline);

  auto* check = app.add_subcommand("oracle-check", "Compare closed forms against exact enumeration");
  check->add_option("--graph", o.graph, "Edge-list file")->required();
  auto* profile_opt = check->add_option("--profile", o.profile, "Class sizes, e.g. 2,2");
  auto* coloring_opt = check->add_option("--coloring", o.coloring, "Take the profile from this coloring");
  profile_opt->excludes(coloring_opt);
  check->add_option("--limit", o.limit, "Maximum number of colorings to enumerate");
  check->add_flag("--dedupe", o.dedupe, "Merge duplicate edges instead of rejecting them");
  add_common(check);

  auto* toy = app.add_subcommand("toy-curve", "CSV of the matching example curves");
  toy->add_option("--edges", o.edges, "Number of matching edges m")->check(CLI::Range(2, 1 << 20));
  toy->add_option("--out", o.out, "Write CSV to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      const auto start = std::chrono::steady_clock::now();
      const Graph g = load_edge_list_file(o.graph, o.dedupe);
      const Coloring f = load_coloring_file(o.coloring, g);
      Timing timing;
      timing.load_ms = elapsed_ms(start);
      emit(o, render(o, make_analyze_report(g, f, index_options(o), timing)));
    } else if (*baseline) {
      const Graph g = load_edge_list_file(o.graph, o.dedupe);
      const Coloring f = load_coloring_file(o.coloring, g);
      emit(o, render(o, make_baseline_report(g, f, index_options(o), o.samples, o.seed)));
    } else if (*check) {
      const Graph g = load_edge_list_file(o.graph, o.dedupe);
      Profile p;
      if (!o.coloring.empty()) {
        p = load_coloring_file(o.coloring, g).profile();
      } else if (!o.profile.empty()) {
        p = Profile::parse(o.profile);
      } else {
        throw InputError(InputError::Kind::InvalidProfile, "oracle-check needs --profile or --coloring");
      }
      const OracleCheckReport rep = oracle_check(g, p, o.limit);
      emit(o, render(o, rep.to_json()));
      return rep.all_pass() ? 0 : 1;
    } else if (*toy) {
      emit(o, toy_curve_csv(o.edges));
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LimitExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
