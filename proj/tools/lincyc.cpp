#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lincyc/engine.hpp"
#include "lincyc/generators.hpp"
#include "lincyc/io.hpp"
#include "lincyc/mert.hpp"
#include "lincyc/oracle.hpp"
#include "lincyc/reductions.hpp"

using namespace lincyc;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFailure = 2;

// Fills every option that was not given on the command line from the
// matching key of a JSON config file.
void apply_config(CLI::App& sub, const std::string& path) {
  auto cfg = nlohmann::json::parse(read_file(path));
  if (!cfg.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    auto* opt = sub.get_option_no_throw("--" + it.key());
    if (!opt) throw Error(ErrorKind::Parse, "unknown config key '" + it.key() + "'");
    if (opt->count() > 0) continue;
    const auto& v = it.value();
    if (v.is_array()) {
      for (const auto& item : v) opt->add_result(item.is_string() ? item.get<std::string>() : item.dump());
    } else if (v.is_boolean()) {
      opt->add_result(v.get<bool>() ? "true" : "false");
    } else {
      opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    }
    opt->run_callback();
  }
}

struct GenArgs {
  GenSpec spec;
  std::string mode = "steiner";
  std::string out;
  std::string witnesses;
  bool json = false;
};

int run_gen(GenArgs& a) {
  a.spec.mode = parse_gen_mode(a.mode);
  auto g = generate(a.spec);
  if (a.out.empty()) {
    std::cout << (a.json ? to_json(g.graph) + "\n" : to_text(g.graph));
  } else {
    write_hypergraph(a.out, g.graph, a.json);
  }
  if (!a.witnesses.empty()) {
    std::vector<std::vector<VertexSet>> cycles;
    for (const auto& c : g.witnesses) cycles.push_back(c.edges);
    write_file(a.witnesses, cycles_to_json(cycles) + "\n");
  }
  std::cerr << g.summary << "\n";
  return kOk;
}

struct FindArgs {
  std::string input;
  std::size_t k = 2;
  std::string mode = "all";
  std::uint64_t seed = 1;
  bool strict = false;
  bool best_effort = false;
  bool json = false;
  std::string out;
};

void print_summary(const EngineReport& rep, std::ostream& os) {
  os << "outcome " << rep.outcome << " mode " << to_string(rep.mode) << " k " << rep.k << " seed " << rep.seed
     << "\n";
  if (rep.family) {
    os << "lengths";
    for (auto len : rep.family->lengths()) os << ' ' << len;
    os << "\nshortest " << rep.family->shortest << "\n";
  }
  os << "bound " << (rep.bound ? std::to_string(*rep.bound) : std::string("undefined")) << "\n";
  os << "regime " << (rep.in_regime ? "in" : "out") << " c1 " << rep.c1 << " c2 " << rep.c2 << "\n";
  for (const auto& t : rep.trace) {
    os << "  " << t.stage;
    for (const auto& [key, value] : t.values) {
      os << ' ' << key << '=';
      std::visit([&](const auto& v) { os << v; }, value);
    }
    os << "\n";
  }
}

int run_find(const FindArgs& a) {
  auto g = read_hypergraph(a.input);
  EngineOptions opts;
  opts.strict = a.strict;
  opts.best_effort = a.best_effort;
  auto rep = find(g, parse_engine_mode(a.mode), a.k, a.seed, opts);
  if (rep.family) {
    if (auto bad = check_family(g, *rep.family)) {
      std::cerr << "internal error: " << *bad << "\n";
      return kFailure;
    }
  }
  if (!a.out.empty()) write_file(a.out, rep.to_json() + "\n");
  if (a.json) std::cout << rep.to_json() << "\n";
  else print_summary(rep, std::cout);
  return rep.ok() ? kOk : kFailure;
}

struct VerifyArgs {
  std::string input;
  std::string cycles;
};

int run_verify(const VerifyArgs& a) {
  auto g = read_hypergraph(a.input);
  auto cycles = parse_cycles_json(read_file(a.cycles));
  int status = kOk;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    auto checked = verify_cycle(g, cycles[i]);
    if (!checked) {
      const auto& rej = checked.rejection();
      std::cout << "cycle " << i << " rejected at edges " << rej.first << "," << rej.second << ": " << rej.reason
                << "\n";
      status = kFailure;
    }
  }
  if (status == kOk) std::cout << "verified " << cycles.size() << " cycles\n";
  return status;
}

struct SpectrumArgs {
  std::string input;
  std::size_t max_len = 10;
  std::uint64_t budget = kOracleBudget;
};

int run_spectrum(const SpectrumArgs& a) {
  auto g = read_hypergraph(a.input);
  auto s = enumerate_cycles(g, a.max_len, a.budget);
  std::cout << spectrum_to_json(s) << "\n";
  return s.complete ? kOk : kFailure;
}

struct SweepArgs {
  std::size_t n = 200;
  std::size_t r = 3;
  std::size_t k = 2;
  double d_from = 2;
  double d_to = 20;
  std::size_t points = 10;
  std::size_t trials = 10;
  std::size_t jobs = 1;
  std::string mode = "all";
  std::uint64_t seed = 1;
  bool best_effort = false;
};

int run_sweep(const SweepArgs& a) {
  if (a.points == 0 || a.trials == 0) throw Error(ErrorKind::PreconditionFailed, "points and trials must be positive");
  const auto mode = parse_engine_mode(a.mode);
  struct Cell {
    std::size_t successes = 0;
    double shortest = 0;
    double bound = 0;
    std::size_t bounded = 0;
  };
  std::vector<Cell> cells(a.points);
  std::vector<double> ds(a.points);
  for (std::size_t i = 0; i < a.points; ++i)
    ds[i] = a.points == 1 ? a.d_from : a.d_from + (a.d_to - a.d_from) * static_cast<double>(i) / static_cast<double>(a.points - 1);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t job = next++; job < a.points * a.trials; job = next++) {
      const std::size_t point = job / a.trials;
      const std::uint64_t seed = a.seed * 1'000'003ULL + job;
      auto g = random_linear(a.n, a.r, ds[point], seed);
      EngineOptions opts;
      opts.best_effort = a.best_effort;
      auto rep = find(g, mode, a.k, seed, opts);
      std::lock_guard<std::mutex> lock(mu);
      auto& cell = cells[point];
      if (rep.ok()) {
        ++cell.successes;
        cell.shortest += static_cast<double>(rep.family->shortest);
      }
      if (rep.bound) {
        ++cell.bounded;
        cell.bound += *rep.bound;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < std::max<std::size_t>(1, a.jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::cout << "d,trials,successes,mean_shortest,mean_bound\n";
  for (std::size_t i = 0; i < a.points; ++i) {
    const auto& c = cells[i];
    std::cout << ds[i] << ',' << a.trials << ',' << c.successes << ',';
    if (c.successes) std::cout << c.shortest / static_cast<double>(c.successes);
    std::cout << ',';
    if (c.bounded) std::cout << c.bound / static_cast<double>(c.bounded);
    std::cout << "\n";
  }
  return kOk;
}

struct MertArgs {
  std::string input;
  std::optional<Vertex> root;
  std::uint64_t seed = 1;
  bool json = false;
};

int run_mert(const MertArgs& a) {
  auto g = read_hypergraph(a.input);
  auto pr = r_partite_reduction(g, a.seed);
  const Vertex root = a.root ? *a.root : (pr.graph.vertices().empty() ? 0 : pr.graph.vertices().front());
  if (!pr.graph.has_vertex(root)) throw Error(ErrorKind::PreconditionFailed, "root is not a vertex of the input");
  RPartition part(pr.graph.universe(), g.uniformity());
  const int root_part = pr.partition.part_of(root);
  for (Vertex v : pr.graph.vertices()) {
    int q = pr.partition.part_of(v);
    if (q == root_part) q = 0;
    else if (q == 0) q = root_part;
    part.assign(v, q);
  }
  auto tree = build_mert(pr.graph, part, root);
  auto problem = check_mert(pr.graph, part, tree);
  if (a.json) {
    std::cout << mert_to_json(tree) << "\n";
  } else {
    std::cout << "root " << tree.root << " height " << tree.height << " edges " << tree.edge_count()
              << " kept " << pr.graph.edge_count() << "/" << g.edge_count() << "\n";
    for (std::size_t i = 0; i < tree.levels.size(); ++i)
      std::cout << "  level " << i << " part " << tree.level_part[i] << " size " << tree.levels[i].size() << "\n";
  }
  if (problem) {
    std::cerr << "invariant violated: " << *problem << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear cycles in linear hypergraphs"};
  app.require_subcommand(1);
  std::string config;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--n", gen.spec.n, "Number of vertices")->required();
  gen_cmd->add_option("--r", gen.spec.r, "Uniformity");
  gen_cmd->add_option("--mode", gen.mode, "steiner | sparsified | planted | random");
  gen_cmd->add_option("--d", gen.spec.d, "Target average degree");
  gen_cmd->add_option("--girth-floor", gen.spec.girth_floor, "Longest forbidden cycle length");
  gen_cmd->add_option("--epsilon", gen.spec.epsilon, "Girth exponent slack");
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
  gen_cmd->add_option("--lengths", gen.spec.lengths, "Planted cycle lengths");
  gen_cmd->add_option("--attempts", gen.spec.max_attempts, "Sparsification retries");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout when empty)");
  gen_cmd->add_option("--witnesses", gen.witnesses, "Write planted cycles here");
  gen_cmd->add_flag("--json", gen.json, "JSON output");
  gen_cmd->add_option("--config", config, "JSON file with default flag values");

  FindArgs fnd;
  auto* find_cmd = app.add_subcommand("find", "Search for a cycle family");
  find_cmd->add_option("--input", fnd.input, "Hypergraph file")->required();
  find_cmd->add_option("--k", fnd.k, "Number of lengths");
  find_cmd->add_option("--mode", fnd.mode, "all | even | c2k");
  find_cmd->add_option("--seed", fnd.seed, "Random seed");
  find_cmd->add_flag("--strict", fnd.strict, "Reject inputs below the density regime");
  find_cmd->add_flag("--best-effort", fnd.best_effort, "Ignore density thresholds");
  find_cmd->add_flag("--json", fnd.json, "Print the report as JSON");
  find_cmd->add_option("--out", fnd.out, "Also write the JSON report here");
  find_cmd->add_option("--config", config, "JSON file with default flag values");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check cycles against a hypergraph");
  verify_cmd->add_option("--input", ver.input, "Hypergraph file")->required();
  verify_cmd->add_option("--cycles", ver.cycles, "Cycle JSON or engine report")->required();
  verify_cmd->add_option("--config", config, "JSON file with default flag values");

  SpectrumArgs spec;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Enumerate cycle lengths exhaustively");
  spectrum_cmd->add_option("--input", spec.input, "Hypergraph file")->required();
  spectrum_cmd->add_option("--max-len", spec.max_len, "Longest length searched");
  spectrum_cmd->add_option("--budget", spec.budget, "Node expansion cap");
  spectrum_cmd->add_option("--config", config, "JSON file with default flag values");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Success rate against average degree");
  sweep_cmd->add_option("--n", sw.n, "Number of vertices");
  sweep_cmd->add_option("--r", sw.r, "Uniformity");
  sweep_cmd->add_option("--k", sw.k, "Number of lengths");
  sweep_cmd->add_option("--d-from", sw.d_from, "Smallest average degree");
  sweep_cmd->add_option("--d-to", sw.d_to, "Largest average degree");
  sweep_cmd->add_option("--points", sw.points, "Degree points");
  sweep_cmd->add_option("--trials", sw.trials, "Trials per point");
  sweep_cmd->add_option("--jobs", sw.jobs, "Worker threads");
  sweep_cmd->add_option("--mode", sw.mode, "all | even | c2k");
  sweep_cmd->add_option("--seed", sw.seed, "Random seed");
  sweep_cmd->add_flag("--best-effort", sw.best_effort, "Ignore density thresholds");
  sweep_cmd->add_option("--config", config, "JSON file with default flag values");

  MertArgs mt;
  auto* mert_cmd = app.add_subcommand("mert", "Build and print the expanded tree");
  mert_cmd->add_option("--input", mt.input, "Hypergraph file")->required();
  mert_cmd->add_option("--root", mt.root, "Root vertex");
  mert_cmd->add_option("--seed", mt.seed, "Seed for the partite reduction");
  mert_cmd->add_flag("--json", mt.json, "Print JSON");
  mert_cmd->add_option("--config", config, "JSON file with default flag values");

  for (auto* sub : app.get_subcommands({}))
    for (auto* opt : sub->get_options())
      if (opt->get_required() && opt->get_name() != "--config") opt->required(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    auto* sub = app.get_subcommands().front();
    if (!config.empty()) apply_config(*sub, config);
    for (auto* opt : sub->get_options())
      if ((opt->get_name() == "--input" || opt->get_name() == "--cycles" || (sub == gen_cmd && opt->get_name() == "--n")) &&
          opt->count() == 0)
        throw Error(ErrorKind::Parse, opt->get_name() + " is required");
    if (sub == gen_cmd) return run_gen(gen);
    if (sub == find_cmd) return run_find(fnd);
    if (sub == verify_cmd) return run_verify(ver);
    if (sub == spectrum_cmd) return run_spectrum(spec);
    if (sub == sweep_cmd) return run_sweep(sw);
    if (sub == mert_cmd) return run_mert(mt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::RetriesExhausted || e.kind() == ErrorKind::BudgetExceeded ? kFailure : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
