// Command-line front end. Every verb is turned into a scenario and run
// through the C interface, so `geuclid run file.scn` and the verb form of the
// same task print identical reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geuclid/geuclid.h"

namespace {

struct Common {
  std::string oracle = "tree";
  int rank = 2;
  std::string extra;
  int radius = 6;
  std::string domain = "q";
  int rmax = 6;
  unsigned long long seed = 42;
  bool unsafe = false;
  long long trials = 100;
  unsigned threads = 1;
};

struct Output {
  bool json_only = false;
  bool emit_scenario = false;
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Log files hold one operation per line; scenarios take `;`-separated ops.
std::string log_value(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> ops;
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) ops.push_back(line);
  }
  return join(ops, "; ");
}

std::string scenario_text(const std::string& task, const Common& c,
                          const std::vector<std::pair<std::string, std::string>>& inputs) {
  std::ostringstream os;
  os << "task = " << task << "\n"
     << "oracle = " << c.oracle << "\n"
     << "rank = " << c.rank << "\n";
  if (c.oracle == "cayley-ball") {
    os << "extra = " << c.extra << "\n"
       << "radius = " << c.radius << "\n";
  }
  os << "domain = " << c.domain << "\n"
     << "seed = " << c.seed << "\n"
     << "rmax = " << c.rmax << "\n"
     << "unsafe = " << (c.unsafe ? "true" : "false") << "\n"
     << "trials = " << c.trials << "\n"
     << "threads = " << c.threads << "\n";
  for (const auto& [k, v] : inputs) os << k << " = " << one_line(v) << "\n";
  return os.str();
}

int run(const std::string& scenario, const Output& out) {
  if (out.emit_scenario) {
    std::cout << scenario;
    return 0;
  }
  geu_report* report = nullptr;
  if (geu_run_scenario(scenario.c_str(), &report) != GEU_OK) {
    std::cerr << "geuclid: " << geu_last_error() << "\n";
    return 1;
  }
  if (out.json_only) {
    std::cout << geu_report_json(report) << "\n";
  } else {
    std::cout << geu_report_rendered(report);
  }
  const int code = geu_report_exit_code(report);
  geu_report_free(report);
  return code;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--oracle", c.oracle, "tree or cayley-ball")->check(CLI::IsMember({"tree", "cayley-ball"}));
  sub->add_option("--rank", c.rank, "free group rank")->check(CLI::Range(1, 26));
  sub->add_option("--extra", c.extra, "extra Cayley generators, comma separated");
  sub->add_option("--radius", c.radius, "Cayley ball radius");
  sub->add_option("--domain", c.domain, "q, z or fp:<p>");
  sub->add_option("--rmax", c.rmax, "largest kernel-search radius");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--unsafe", c.unsafe, "run the general path without the displacement hypothesis");
  sub->add_option("--trials", c.trials, "audit trials per invariant");
  sub->add_option("--threads", c.threads, "audit worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric Euclidean algorithm for group algebras of free groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  Output out;
  app.add_flag("--json", out.json_only, "print only the JSON section");
  app.add_flag("--emit-scenario", out.emit_scenario, "print the scenario instead of running it");

  std::vector<std::pair<std::string, std::string>> inputs;
  std::string task;

  std::string xi, alpha;
  auto* reduce = app.add_subcommand("reduce", "one reduction step on an exact relation sum alpha_i xi_i = 0");
  reduce->add_option("--xi", xi, "comma-separated elements")->required();
  reduce->add_option("--alpha", alpha, "comma-separated coefficients")->required();

  std::vector<std::string> gens;
  auto* ideal = app.add_subcommand("ideal-basis", "free basis of a finitely generated left ideal");
  ideal->add_option("generators", gens, "elements")->required();

  std::vector<std::string> vecs;
  auto* submodule = app.add_subcommand("submodule-basis", "free basis of a submodule of K[F]^m");
  submodule->add_option("vectors", vecs, "vectors such as \"(1+a; 0)\"")->required();

  std::string matrix, inverse;
  auto* ge = app.add_subcommand("ge-factor", "factor X into elementary and diagonal matrices");
  ge->add_option("--matrix", matrix, "rows of X as vectors")->required();
  ge->add_option("--inverse", inverse, "rows of A with AX = 1")->required();

  std::vector<std::string> bass_gens;
  auto* bass = app.add_subcommand("bass-descent", "free basis of a submodule over Z[F], or a torsion certificate");
  bass->add_option("generators", bass_gens, "elements or vectors")->required();

  int n = 1;
  auto* hyp = app.add_subcommand("check-hypothesis", "displacement hypothesis for n-element families");
  hyp->add_option("--n", n, "family size")->check(CLI::PositiveNumber);

  auto* delta = app.add_subcommand("delta", "hyperbolicity constant of the oracle");

  int group_radius = 2;
  auto* disp = app.add_subcommand("displacement", "minimal displacement over a group ball");
  disp->add_option("--group-radius", group_radius, "word-length bound of the scanned elements");

  auto* audit = app.add_subcommand("audit-lemmas", "randomized audit of the geometric invariants");

  std::string log_path;
  std::vector<std::string> slots;
  bool replay_inverse = false;
  auto* replay = app.add_subcommand("replay", "apply a transformation log to slots");
  replay->add_option("--log", log_path, "log file, one operation per line")->required()->check(CLI::ExistingFile);
  replay->add_option("slots", slots, "elements or vectors")->required();
  replay->add_flag("--inverse", replay_inverse, "undo the log instead");

  std::string scenario_path;
  auto* run_cmd = app.add_subcommand("run", "run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "key = value scenario file")->required()->check(CLI::ExistingFile);

  for (auto* sub : {reduce, ideal, submodule, ge, bass, hyp, delta, disp, audit, replay}) add_common(sub, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_cmd->parsed()) return run(read_file(scenario_path), out);
    if (reduce->parsed()) {
      task = "reduce";
      inputs = {{"xi", xi}, {"alpha", alpha}};
    } else if (ideal->parsed()) {
      task = "ideal-basis";
      inputs = {{"generators", join(gens, ", ")}};
    } else if (submodule->parsed()) {
      task = "submodule-basis";
      inputs = {{"vectors", join(vecs, ", ")}};
    } else if (ge->parsed()) {
      task = "ge-factor";
      inputs = {{"matrix", matrix}, {"inverse", inverse}};
    } else if (bass->parsed()) {
      task = "bass-descent";
      const bool as_vectors = bass_gens.front().find('(') != std::string::npos;
      inputs = {{as_vectors ? "vectors" : "generators", join(bass_gens, ", ")}};
    } else if (hyp->parsed()) {
      task = "check-hypothesis";
      inputs = {{"n", std::to_string(n)}};
    } else if (delta->parsed()) {
      task = "delta";
    } else if (disp->parsed()) {
      task = "displacement";
      inputs = {{"group_radius", std::to_string(group_radius)}};
    } else if (audit->parsed()) {
      task = "audit-lemmas";
    } else if (replay->parsed()) {
      task = "replay";
      inputs = {{"log", log_value(log_path)},
                {"slots", join(slots, ", ")},
                {"inverse_replay", replay_inverse ? "true" : "false"}};
    }
    return run(scenario_text(task, c, inputs), out);
  } catch (const std::exception& e) {
    std::cerr << "geuclid: " << e.what() << "\n";
    return 1;
  }
}
