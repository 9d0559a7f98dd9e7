#include "geuclid/geuclid.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "error.hpp"
#include "grammar.hpp"
#include "ring_element.hpp"
#include "scenario.hpp"
#include "space.hpp"
#include "transform_log.hpp"

struct geu_oracle {
  std::unique_ptr<geuclid::SpaceOracle> impl;
};

struct geu_element {
  geuclid::RingElement value;
};

struct geu_log {
  geuclid::TransformationLog value;
  geuclid::Domain domain;
  int rank = 0;
};

struct geu_report {
  geuclid::Report value;
  std::string rendered;
};

namespace {

thread_local std::string g_last_error;

geu_status fail(geu_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs `body`, mapping library exceptions onto status codes.
template <class F>
geu_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GEU_OK;
  } catch (const geuclid::Error& e) {
    return fail(static_cast<geu_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GEU_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(GEU_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define GEU_REQUIRE(cond) \
  if (!(cond)) return fail(GEU_ERR_NULL_ARGUMENT, "null argument: " #cond)

}  // namespace

extern "C" {

const char* geu_version(void) { return "1.0.0"; }

const char* geu_last_error(void) { return g_last_error.c_str(); }

const char* geu_status_name(geu_status status) {
  if (status == GEU_OK) return "ok";
  if (status == GEU_ERR_NULL_ARGUMENT) return "null-argument";
  return geuclid::error_code_name(static_cast<geuclid::ErrorCode>(status));
}

void geu_string_free(char* s) { std::free(s); }

geu_status geu_oracle_tree(int rank, geu_oracle** out) {
  GEU_REQUIRE(out);
  return guarded([&] { *out = new geu_oracle{std::make_unique<geuclid::TreeOracle>(rank)}; });
}

geu_status geu_oracle_cayley_ball(int rank, const char* extra, int radius, geu_oracle** out) {
  GEU_REQUIRE(out);
  return guarded([&] {
    std::vector<geuclid::Word> words;
    if (extra && *extra) words = geuclid::parse_word_list(extra, rank);
    *out = new geu_oracle{geuclid::build_cayley_ball(rank, std::move(words), radius)};
  });
}

int geu_oracle_rank(const geu_oracle* oracle) { return oracle ? oracle->impl->rank() : 0; }

geu_status geu_oracle_delta(const geu_oracle* oracle, char** out) {
  GEU_REQUIRE(oracle && out);
  return guarded([&] { *out = dup(geuclid::to_string(oracle->impl->delta())); });
}

geu_status geu_oracle_description(const geu_oracle* oracle, char** out) {
  GEU_REQUIRE(oracle && out);
  return guarded([&] { *out = dup(oracle->impl->description()); });
}

void geu_oracle_free(geu_oracle* oracle) { delete oracle; }

geu_status geu_element_parse(const char* text, const char* domain, int rank, geu_element** out) {
  GEU_REQUIRE(text && domain && out);
  return guarded([&] {
    *out = new geu_element{geuclid::parse_element(text, geuclid::Domain::parse(domain), rank)};
  });
}

geu_status geu_element_to_string(const geu_element* x, char** out) {
  GEU_REQUIRE(x && out);
  return guarded([&] { *out = dup(x->value.to_string()); });
}

geu_status geu_element_add(const geu_element* x, const geu_element* y, geu_element** out) {
  GEU_REQUIRE(x && y && out);
  return guarded([&] { *out = new geu_element{x->value + y->value}; });
}

geu_status geu_element_mul(const geu_element* x, const geu_element* y, geu_element** out) {
  GEU_REQUIRE(x && y && out);
  return guarded([&] { *out = new geu_element{x->value * y->value}; });
}

int geu_element_is_zero(const geu_element* x) { return x && x->value.is_zero() ? 1 : 0; }

int geu_element_equal(const geu_element* x, const geu_element* y) {
  return x && y && x->value == y->value ? 1 : 0;
}

geu_status geu_element_diameter(const geu_element* x, const geu_oracle* oracle, char** out) {
  GEU_REQUIRE(x && oracle && out);
  return guarded([&] { *out = dup(geuclid::diam(x->value, *oracle->impl).to_string()); });
}

void geu_element_free(geu_element* x) { delete x; }

geu_status geu_log_parse(const char* text, const char* domain, int rank, geu_log** out) {
  GEU_REQUIRE(text && domain && out);
  return guarded([&] {
    const auto d = geuclid::Domain::parse(domain);
    *out = new geu_log{geuclid::TransformationLog::parse(text, d, rank), d, rank};
  });
}

size_t geu_log_size(const geu_log* log) { return log ? log->value.size() : 0; }

geu_status geu_log_to_string(const geu_log* log, char** out) {
  GEU_REQUIRE(log && out);
  return guarded([&] { *out = dup(log->value.to_string()); });
}

geu_status geu_log_replay(const geu_log* log, const char* slots, int inverse, char** out) {
  GEU_REQUIRE(log && slots && out);
  return guarded([&] {
    std::string text(slots);
    const auto first = text.find_first_not_of(" \t\r\n");
    std::string result;
    if (first != std::string::npos && text[first] == '(') {
      auto vs = geuclid::parse_vector_list(text, log->domain, log->rank);
      inverse ? log->value.replay_inverse(vs) : log->value.replay(vs);
      for (std::size_t i = 0; i < vs.size(); ++i) result += (i ? ", " : "") + geuclid::to_string(vs[i]);
    } else {
      auto xs = geuclid::parse_element_list(text, log->domain, log->rank);
      inverse ? log->value.replay_inverse(xs) : log->value.replay(xs);
      for (std::size_t i = 0; i < xs.size(); ++i) result += (i ? ", " : "") + xs[i].to_string();
    }
    *out = dup(result);
  });
}

void geu_log_free(geu_log* log) { delete log; }

geu_status geu_run_scenario(const char* scenario_text, geu_report** out) {
  GEU_REQUIRE(scenario_text && out);
  return guarded([&] {
    auto* r = new geu_report{geuclid::run_scenario_text(scenario_text), {}};
    r->rendered = r->value.render();
    *out = r;
  });
}

const char* geu_report_text(const geu_report* report) { return report ? report->value.text.c_str() : ""; }

const char* geu_report_json(const geu_report* report) { return report ? report->value.json.c_str() : ""; }

const char* geu_report_rendered(const geu_report* report) { return report ? report->rendered.c_str() : ""; }

int geu_report_exit_code(const geu_report* report) { return report ? report->value.exit_code : 1; }

geu_status geu_report_error(const geu_report* report) {
  return report ? static_cast<geu_status>(report->value.error_code) : GEU_ERR_NULL_ARGUMENT;
}

double geu_report_seconds(const geu_report* report) { return report ? report->value.seconds : 0.0; }

void geu_report_free(geu_report* report) { delete report; }

const char* geu_task_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& t : geuclid::scenario_tasks()) s += t + "\n";
    return s;
  }();
  return names.c_str();
}

}  // extern "C"
