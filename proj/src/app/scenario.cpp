#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

#include "audit.hpp"
#include "bass.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "reduction.hpp"
#include "transform_log.hpp"

namespace geuclid {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const std::set<std::string> kInputKeys = {"xi",   "alpha", "generators", "vectors",      "matrix",        "inverse",
                                          "log",  "slots", "n",          "group_radius", "inverse_replay"};

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::Parse, "scenario key '" + key + "' expects true or false, got '" + v + "'");
}

long long parse_int(const std::string& key, const std::string& v, long long lo) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw Error(ErrorCode::Parse, "scenario key '" + key + "' expects an integer");
  if (x < lo) throw Error(ErrorCode::Usage, "scenario key '" + key + "' must be at least " + std::to_string(lo));
  return x;
}

int alphabet_rank(const std::string& v) {
  if (!v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return static_cast<int>(parse_int("alphabet", v, 1));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != static_cast<char>('a' + i)) {
      throw Error(ErrorCode::Parse, "alphabet must be a prefix of a..z (e.g. ab), got '" + v + "'");
    }
  }
  if (v.empty() || v.size() > 26) throw Error(ErrorCode::Parse, "empty alphabet");
  return static_cast<int>(v.size());
}

std::string words_text(const std::vector<Word>& ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? "," : "") + ws[i].to_string();
  return out;
}

// ---------------------------------------------------------------------------
// Task plumbing.

struct TaskEnv {
  const Scenario& s;
  const SpaceOracle& oracle;
  const ReductionContext& ctx;
  json& out;
  std::ostringstream& text;
};

const std::string& need(const Scenario& s, const std::string& key) {
  const auto it = s.inputs.find(key);
  if (it == s.inputs.end()) throw Error(ErrorCode::Usage, "task '" + s.task + "' needs input '" + key + "'");
  return it->second;
}

std::vector<RingElement> elements(const Scenario& s, const std::string& key) {
  return parse_element_list(need(s, key), s.domain, s.oracle.rank);
}

std::vector<RingVector> vectors(const Scenario& s, const std::string& key) {
  return parse_vector_list(need(s, key), s.domain, s.oracle.rank);
}

template <class T>
json strings(const std::vector<T>& xs) {
  json a = json::array();
  for (const auto& x : xs) {
    if constexpr (std::is_same_v<T, RingVector>) {
      a.push_back(to_string(x));
    } else {
      a.push_back(x.to_string());
    }
  }
  return a;
}

json log_json(const TransformationLog& log) {
  json a = json::array();
  for (const auto& op : log.ops()) a.push_back(op.to_string());
  return a;
}

template <class T>
std::string joined(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, RingVector>) {
      out += to_string(xs[i]);
    } else {
      out += xs[i].to_string();
    }
  }
  return out;
}

void print_log(std::ostringstream& text, const TransformationLog& log) {
  text << "log (" << log.size() << " ops):\n";
  for (const auto& op : log.ops()) text << "  " << op.to_string() << "\n";
}

int task_reduce(TaskEnv& e) {
  const auto xi = elements(e.s, "xi");
  const auto alpha = elements(e.s, "alpha");
  if (xi.size() != alpha.size()) throw Error(ErrorCode::Usage, "xi and alpha must have the same length");
  e.out["input"] = {{"xi", strings(xi)}, {"alpha", strings(alpha)}};

  const ReductionStep step = reduce_step(xi, alpha, e.ctx);
  std::vector<RingElement> replayed = xi;
  step.log.replay(replayed);
  const bool replay_ok = replayed[step.target] == step.result;

  json S = json::array();
  for (auto v : step.S) S.push_back(step.family.members[v].element.to_string());
  e.out["path"] = step_path_name(step.path);
  e.out["target"] = step.target;
  e.out["v_star"] = step.family.members[step.v_star].element.to_string();
  e.out["S"] = S;
  e.out["beta"] = strings(step.beta);
  e.out["result"] = step.result.to_string();
  e.out["diam_before"] = step.diam_before.to_string();
  e.out["diam_after"] = step.diam_after.to_string();
  e.out["delta_n"] = to_string(step.constants.delta_n());
  e.out["log"] = log_json(step.log);
  e.out["diagnostics"] = step.diagnostics;
  e.out["checks"] = {{"replay_gives_result", replay_ok}};
  e.out["status"] = replay_ok ? "REDUCED" : "REPLAY_MISMATCH";

  e.text << "reduce (" << step_path_name(step.path) << " path)\n"
         << "entry " << step.target << " becomes " << step.result.to_string() << "\n"
         << "diameter " << step.diam_before.to_string() << " -> " << step.diam_after.to_string() << "\n"
         << "v* = " << step.family.members[step.v_star].element.to_string() << ", |S| = " << step.S.size() << "\n";
  print_log(e.text, step.log);
  for (const auto& d : step.diagnostics) e.text << "note: " << d << "\n";
  return replay_ok ? 0 : 1;
}

json searches_json(const BasisResult& r) {
  json a = json::array();
  for (const auto& s : r.searches) a.push_back({{"generators", s.generators}, {"radius", s.radius}, {"found", s.found}});
  return a;
}

void print_searches(std::ostringstream& text, const BasisResult& r) {
  for (const auto& s : r.searches) {
    text << "  kernel search on " << s.generators << " generators, radius " << s.radius << ": "
         << (s.found ? "relation found" : "none") << "\n";
  }
}

int task_ideal_basis(TaskEnv& e) {
  const auto gens = elements(e.s, "generators");
  e.out["input"] = {{"generators", strings(gens)}};
  const BasisResult r = ideal_basis(gens, e.ctx, e.s.r_max);

  std::vector<RingElement> slots = gens;
  r.log.replay(slots);
  const bool forward = slots == r.final_slots;
  r.log.replay_inverse(slots);
  const bool inverse = slots == gens;

  e.out["status"] = r.status_string();
  e.out["basis"] = strings(r.basis);
  e.out["final_slots"] = strings(r.final_slots);
  e.out["log"] = log_json(r.log);
  e.out["searches"] = searches_json(r);
  e.out["reduction_steps"] = r.reduction_steps;
  e.out["checks"] = {{"replay_gives_final_slots", forward}, {"inverse_replay_gives_input", inverse}};

  e.text << "ideal-basis: " << r.status_string() << "\n"
         << "basis (" << r.basis.size() << "): " << joined(r.basis) << "\n";
  print_log(e.text, r.log);
  print_searches(e.text, r);
  e.text << "replay " << (forward ? "ok" : "MISMATCH") << ", inverse replay " << (inverse ? "ok" : "MISMATCH")
         << "\n";
  if (!forward || !inverse) return 1;
  return r.status == BasisStatus::IndependentUpTo ? 2 : 0;
}

int task_submodule_basis(TaskEnv& e) {
  const auto vs = vectors(e.s, "vectors");
  e.out["input"] = {{"vectors", strings(vs)}};
  const BasisResult r = submodule_basis(vs, e.ctx, e.s.r_max);

  std::vector<RingVector> slots = vs;
  r.log.replay(slots);
  const bool forward = slots == r.final_vector_slots;
  r.log.replay_inverse(slots);
  const bool inverse = slots == vs;

  e.out["status"] = r.status_string();
  e.out["basis"] = strings(r.vector_basis);
  e.out["final_slots"] = strings(r.final_vector_slots);
  e.out["log"] = log_json(r.log);
  e.out["searches"] = searches_json(r);
  e.out["reduction_steps"] = r.reduction_steps;
  e.out["checks"] = {{"replay_gives_final_slots", forward}, {"inverse_replay_gives_input", inverse}};

  e.text << "submodule-basis: " << r.status_string() << "\n"
         << "basis (" << r.vector_basis.size() << "): " << joined(r.vector_basis) << "\n";
  print_log(e.text, r.log);
  print_searches(e.text, r);
  e.text << "replay " << (forward ? "ok" : "MISMATCH") << ", inverse replay " << (inverse ? "ok" : "MISMATCH")
         << "\n";
  if (!forward || !inverse) return 1;
  return r.status == BasisStatus::IndependentUpTo ? 2 : 0;
}

int task_ge_factor(TaskEnv& e) {
  const RingMatrix X = vectors(e.s, "matrix");
  const RingMatrix A = vectors(e.s, "inverse");
  e.out["input"] = {{"matrix", strings(X)}, {"inverse", strings(A)}};
  const GeFactorResult r = ge_factor(X, A, e.ctx);
  const bool ok = log_product(r.log, e.s.domain, X.size()) == X;
  e.out["log"] = log_json(r.log);
  e.out["reduction_steps"] = r.steps.size();
  e.out["checks"] = {{"replay_gives_matrix", ok}};
  e.out["status"] = ok ? "FACTORED" : "REPLAY_MISMATCH";
  e.text << "ge-factor: " << X.size() << "x" << X.size() << " matrix, " << r.log.size() << " operations\n";
  print_log(e.text, r.log);
  e.text << "replay on the identity rows " << (ok ? "gives X" : "DOES NOT give X") << "\n";
  return ok ? 0 : 1;
}

json coefficient_rows(const std::vector<std::vector<RingElement>>& rows) {
  json a = json::array();
  for (const auto& row : rows) a.push_back(strings(row));
  return a;
}

int task_bass_descent(TaskEnv& e) {
  std::vector<RingVector> gens;
  if (e.s.inputs.count("vectors")) {
    gens = vectors(e.s, "vectors");
  } else {
    for (auto& x : elements(e.s, "generators")) gens.push_back({std::move(x)});
  }
  if (gens.empty()) throw Error(ErrorCode::Usage, "bass-descent needs at least one generator");
  const std::size_t ambient = gens.front().size();
  e.out["input"] = {{"vectors", strings(gens)}};

  const BassResult r = bass_descent({ambient, gens}, e.ctx, e.s.r_max);
  e.out["status"] = r.status_string();
  e.out["k0"] = r.k0.get_str();
  e.out["basis"] = strings(r.basis);
  json steps = json::array();
  for (const auto& st : r.steps) {
    steps.push_back({{"k_before", st.k_before.get_str()},
                     {"p", st.p},
                     {"kernel_block", st.kernel_block},
                     {"containments_verified", st.containments_verified}});
  }
  e.out["steps"] = steps;
  e.out["membership"] = coefficient_rows(r.membership);
  e.out["expansion"] = coefficient_rows(r.expansion);
  e.out["note"] = r.note;
  if (r.star) {
    e.out["star_certificate"] = {
        {"p", r.star->p}, {"m", to_string(r.star->m)}, {"combination", strings(r.star->combination)}};
  } else {
    e.out["star_certificate"] = nullptr;
  }

  e.text << "bass-descent: " << r.status_string() << "\n"
         << "k0 = " << r.k0.get_str() << ", " << r.steps.size() << " descent steps\n";
  if (!r.basis.empty()) e.text << "basis (" << r.basis.size() << "): " << joined(r.basis) << "\n";
  if (r.star) {
    e.text << "star certificate: p = " << r.star->p << ", m = " << to_string(r.star->m)
           << " lies in M, m/p was not found in M\n";
  }
  if (!r.note.empty()) e.text << "note: " << r.note << "\n";
  switch (r.status) {
    case BassStatus::Free:
      return 0;
    case BassStatus::StarFailure:
      return 1;
    default:
      return 2;
  }
}

int task_check_hypothesis(TaskEnv& e) {
  const auto it = e.s.inputs.find("n");
  const int n = it == e.s.inputs.end() ? 1 : static_cast<int>(parse_int("n", it->second, 1));
  const HypothesisReport h = check_hypothesis(e.oracle, n);
  e.out["n"] = h.n;
  e.out["delta"] = to_string(h.delta);
  e.out["displacement_lower_bound"] = to_string(h.displacement_lower_bound);
  e.out["threshold"] = to_string(h.threshold);
  e.out["satisfied"] = h.satisfied;
  e.out["caveats"] = h.caveats;
  e.out["status"] = h.satisfied ? "SATISFIED" : "NOT_SATISFIED";
  e.text << "hypothesis for n = " << n << ": " << (h.satisfied ? "satisfied" : "not satisfied") << "\n"
         << "displacement " << to_string(h.displacement_lower_bound) << " vs threshold (2n+11)^2 delta = "
         << to_string(h.threshold) << "\n";
  if (!h.caveats.empty()) e.text << "caveat: " << h.caveats << "\n";
  return 0;
}

int task_delta(TaskEnv& e) {
  e.out["delta"] = to_string(e.oracle.delta());
  e.out["status"] = "OK";
  e.text << "delta = " << to_string(e.oracle.delta()) << "\n";
  if (const auto* ball = dynamic_cast<const CayleyBallOracle*>(&e.oracle)) {
    e.out["four_point_constant"] = to_string(ball->four_point_constant());
    e.out["thin_triangle_constant"] = to_string(ball->thin_triangle_constant());
    e.out["vertices"] = ball->vertices().size();
    e.out["caveat"] = ball->caveat();
    e.text << "four-point constant " << to_string(ball->four_point_constant()) << ", thin-triangle constant "
           << to_string(ball->thin_triangle_constant()) << "\n"
           << ball->vertices().size() << " vertices\n"
           << "caveat: " << ball->caveat() << "\n";
  }
  return 0;
}

int task_displacement(TaskEnv& e) {
  const auto it = e.s.inputs.find("group_radius");
  const int gr = it == e.s.inputs.end() ? 2 : static_cast<int>(parse_int("group_radius", it->second, 1));
  const Displacement d = min_displacement(e.oracle, gr);
  e.out["group_radius"] = gr;
  e.out["value"] = to_string(d.value);
  e.out["exact"] = d.exact;
  e.out["witnesses_scanned"] = d.witnesses_scanned;
  e.out["witness_g"] = d.witness_g.to_string();
  e.out["witness_p"] = d.witness_p.to_string();
  e.out["status"] = "OK";
  e.text << "displacement " << (d.exact ? "= " : "<= ") << to_string(d.value) << " (g = " << d.witness_g.to_string()
         << ", p = " << d.witness_p.to_string() << ", " << d.witnesses_scanned << " pairs)\n";
  return 0;
}

int task_audit(TaskEnv& e) {
  AuditOptions opt;
  opt.trials = e.s.trials;
  opt.seed = e.s.seed;
  opt.threads = e.s.threads;
  const AuditReport rep = audit_lemmas(e.oracle, opt);
  json inv = json::array();
  for (const auto& t : rep.invariants) {
    inv.push_back({{"name", t.name},
                   {"statement", t.statement},
                   {"trials", t.trials},
                   {"passes", t.passes},
                   {"failures", t.failures},
                   {"skipped", t.skipped},
                   {"counterexamples", t.counterexamples}});
  }
  e.out["oracle_delta"] = to_string(rep.delta);
  e.out["displacement"] = to_string(rep.displacement);
  e.out["invariants"] = inv;
  e.out["total_failures"] = rep.total_failures();
  e.out["status"] = rep.total_failures() == 0 ? "ALL_PASS" : "FAILURES";

  e.text << "audit on " << rep.oracle << ", delta " << to_string(rep.delta) << ", " << rep.trials
         << " trials, seed " << rep.seed << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-28s %8s %8s %8s\n", "invariant", "passes", "fails", "skipped");
  e.text << line;
  for (const auto& t : rep.invariants) {
    std::snprintf(line, sizeof line, "  %-28s %8zu %8zu %8zu\n", t.name.c_str(), t.passes, t.failures, t.skipped);
    e.text << line;
    for (const auto& c : t.counterexamples) e.text << "    counterexample: " << c << "\n";
  }
  e.text << "total failures: " << rep.total_failures() << "\n";
  return rep.total_failures() == 0 ? 0 : 1;
}

int task_replay(TaskEnv& e) {
  std::string log_text = need(e.s, "log");
  std::replace(log_text.begin(), log_text.end(), ';', '\n');
  const TransformationLog log = TransformationLog::parse(log_text, e.s.domain, e.s.oracle.rank);
  const auto inv = e.s.inputs.find("inverse_replay");
  const bool inverse = inv != e.s.inputs.end() && parse_bool("inverse_replay", inv->second);
  const std::string slots_text = trim(need(e.s, "slots"));
  e.out["log"] = log_json(log);
  e.out["inverse_replay"] = inverse;
  e.out["status"] = "OK";
  std::string result;
  if (!slots_text.empty() && slots_text.front() == '(') {
    auto slots = parse_vector_list(slots_text, e.s.domain, e.s.oracle.rank);
    e.out["input"] = {{"slots", strings(slots)}};
    inverse ? log.replay_inverse(slots) : log.replay(slots);
    e.out["slots"] = strings(slots);
    result = joined(slots);
  } else {
    auto slots = parse_element_list(slots_text, e.s.domain, e.s.oracle.rank);
    e.out["input"] = {{"slots", strings(slots)}};
    inverse ? log.replay_inverse(slots) : log.replay(slots);
    e.out["slots"] = strings(slots);
    result = joined(slots);
  }
  e.text << (inverse ? "inverse replay" : "replay") << " of " << log.size() << " ops\n" << result << "\n";
  return 0;
}

using TaskFn = std::function<int(TaskEnv&)>;

const std::vector<std::pair<std::string, TaskFn>>& task_table() {
  static const std::vector<std::pair<std::string, TaskFn>> table = {
      {"reduce", task_reduce},
      {"ideal-basis", task_ideal_basis},
      {"submodule-basis", task_submodule_basis},
      {"ge-factor", task_ge_factor},
      {"bass-descent", task_bass_descent},
      {"check-hypothesis", task_check_hypothesis},
      {"delta", task_delta},
      {"displacement", task_displacement},
      {"audit-lemmas", task_audit},
      {"replay", task_replay},
  };
  return table;
}

json scenario_echo(const Scenario& s) {
  json o = {{"kind", s.oracle.kind}, {"rank", s.oracle.rank}};
  if (s.oracle.kind == "cayley-ball") {
    o["extra"] = words_text(s.oracle.extra);
    o["radius"] = s.oracle.radius;
  }
  json j = {{"oracle", o},         {"domain", s.domain.name()}, {"seed", s.seed},
            {"rmax", s.r_max},     {"unsafe", s.unsafe}};
  if (s.task == "audit-lemmas") j["trials"] = s.trials;
  return j;
}

Report error_report(const std::string& task, const Error& err, json j) {
  Report r;
  r.task = task;
  r.exit_code = 1;
  r.error_code = static_cast<int>(err.code());
  j["status"] = "ERROR";
  j["error"] = {{"code", error_code_name(err.code())}, {"message", err.what()}};
  r.json = j.dump(2);
  r.text = std::string("error (") + error_code_name(err.code()) + "): " + err.what() + "\n";
  return r;
}

}  // namespace

std::unique_ptr<SpaceOracle> OracleSpec::build() const {
  if (kind == "tree") return std::make_unique<TreeOracle>(rank);
  if (kind == "cayley-ball") return build_cayley_ball(rank, extra, radius, vertex_cap);
  throw Error(ErrorCode::Usage, "unknown oracle '" + kind + "' (expected tree or cayley-ball)");
}

Scenario parse_scenario(std::string_view text) {
  // Logical lines first: join continuations, drop comments and blanks.
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string pending;
  std::size_t start_line = 0;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string t = trim(raw);
    if (pending.empty()) start_line = lineno;
    if (!t.empty() && t.back() == '\\') {
      t.pop_back();
      pending += trim(t) + " ";
      continue;
    }
    pending += t;
    if (!trim(pending).empty()) lines.emplace_back(start_line, trim(pending));
    pending.clear();
  }
  if (!trim(pending).empty()) lines.emplace_back(start_line, trim(pending));

  std::map<std::string, std::string> kv;
  for (const auto& [no, line] : lines) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Parse, "scenario line " + std::to_string(no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key == "R_max" || key == "r_max") key = "rmax";
    if (kv.count(key)) throw Error(ErrorCode::Parse, "scenario line " + std::to_string(no) + ": duplicate key " + key);
    kv[key] = trim(line.substr(eq + 1));
  }

  Scenario s;
  std::string extra_text;
  for (const auto& [key, v] : kv) {
    if (key == "task") {
      s.task = v;
    } else if (key == "oracle") {
      s.oracle.kind = v;
    } else if (key == "rank") {
      s.oracle.rank = static_cast<int>(parse_int(key, v, 1));
    } else if (key == "alphabet") {
      s.oracle.rank = alphabet_rank(v);
    } else if (key == "extra") {
      extra_text = v;
    } else if (key == "radius") {
      s.oracle.radius = static_cast<int>(parse_int(key, v, 1));
    } else if (key == "vertex_cap") {
      s.oracle.vertex_cap = static_cast<std::size_t>(parse_int(key, v, 1));
    } else if (key == "domain") {
      s.domain = Domain::parse(v);
    } else if (key == "seed") {
      s.seed = static_cast<std::uint64_t>(parse_int(key, v, 0));
    } else if (key == "rmax") {
      s.r_max = static_cast<int>(parse_int(key, v, 0));
    } else if (key == "unsafe") {
      s.unsafe = parse_bool(key, v);
    } else if (key == "trials") {
      s.trials = static_cast<std::size_t>(parse_int(key, v, 0));
    } else if (key == "threads") {
      s.threads = static_cast<unsigned>(parse_int(key, v, 1));
    } else if (kInputKeys.count(key)) {
      s.inputs[key] = v;
    } else {
      throw Error(ErrorCode::Parse, "unknown scenario key '" + key + "'");
    }
  }
  if (s.task.empty()) throw Error(ErrorCode::Usage, "scenario has no task");
  const auto& table = task_table();
  if (std::none_of(table.begin(), table.end(), [&](const auto& t) { return t.first == s.task; })) {
    throw Error(ErrorCode::Usage, "unknown task '" + s.task + "'");
  }
  if (s.oracle.kind != "tree" && s.oracle.kind != "cayley-ball") {
    throw Error(ErrorCode::Usage, "unknown oracle '" + s.oracle.kind + "' (expected tree or cayley-ball)");
  }
  if (s.oracle.rank > 26) throw Error(ErrorCode::Usage, "rank must be at most 26");
  if (!extra_text.empty()) s.oracle.extra = parse_word_list(extra_text, s.oracle.rank);
  return s;
}

std::string Scenario::to_text() const {
  std::ostringstream os;
  os << "task = " << task << "\n"
     << "oracle = " << oracle.kind << "\n"
     << "rank = " << oracle.rank << "\n";
  if (oracle.kind == "cayley-ball") {
    os << "extra = " << words_text(oracle.extra) << "\n"
       << "radius = " << oracle.radius << "\n"
       << "vertex_cap = " << oracle.vertex_cap << "\n";
  }
  os << "domain = " << domain.name() << "\n"
     << "seed = " << seed << "\n"
     << "rmax = " << r_max << "\n"
     << "unsafe = " << (unsafe ? "true" : "false") << "\n"
     << "trials = " << trials << "\n"
     << "threads = " << threads << "\n";
  for (const auto& [k, v] : inputs) os << k << " = " << v << "\n";
  return os.str();
}

const std::vector<std::string>& scenario_tasks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& t : task_table()) out.push_back(t.first);
    return out;
  }();
  return names;
}

std::string Report::render() const {
  char elapsed[64];
  std::snprintf(elapsed, sizeof elapsed, "elapsed: %.3f s\n", seconds);
  return text + elapsed + "---json---\n" + json + "\n";
}

Report run_scenario(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  json j;
  j["task"] = s.task;
  j["scenario"] = scenario_echo(s);
  Report r;
  try {
    const auto& table = task_table();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& t) { return t.first == s.task; });
    if (it == table.end()) throw Error(ErrorCode::Usage, "unknown task '" + s.task + "'");
    if (s.task == "audit-lemmas" && s.trials < 1) throw Error(ErrorCode::Usage, "trials must be at least 1");
    const auto oracle = s.oracle.build();
    j["scenario"]["oracle"]["delta"] = to_string(oracle->delta());
    ReductionOptions opt;
    opt.unsafe = s.unsafe;
    const ReductionContext ctx(*oracle, opt);
    std::ostringstream text;
    text << "task: " << s.task << " on " << oracle->description() << " over " << s.domain.name() << "\n";
    TaskEnv env{s, *oracle, ctx, j, text};
    r.task = s.task;
    r.exit_code = it->second(env);
    j["exit_code"] = r.exit_code;
    r.json = j.dump(2);
    r.text = text.str();
  } catch (const Error& err) {
    j["exit_code"] = 1;
    r = error_report(s.task, err, j);
  } catch (const std::exception& ex) {
    j["exit_code"] = 1;
    r = error_report(s.task, Error(ErrorCode::Internal, ex.what()), j);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Report run_scenario_text(std::string_view text) {
  Scenario s;
  try {
    s = parse_scenario(text);
  } catch (const Error& err) {
    return error_report("", err, json{{"task", nullptr}, {"exit_code", 1}});
  }
  return run_scenario(s);
}

}  // namespace geuclid
