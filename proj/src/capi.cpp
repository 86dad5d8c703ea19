#include <cstring>
#include <string>

#include "json_io.hpp"
#include "symflow/error.hpp"
#include "symflow/lab.hpp"
#include "symflow/markers.hpp"
#include "symflow/periodic.hpp"
#include "symflow/symflow.h"

struct sf_subshift {
  symflow::Subshift value;
};
struct sf_measure {
  std::shared_ptr<const symflow::MarkovMeasure> value;
};
struct sf_flow {
  symflow::SuspensionFlow value;
};
struct sf_census {
  symflow::PeriodicCensus value;
};
struct sf_lab_result {
  symflow::LabOutcome value;
};

namespace {

thread_local std::string lastError;

sf_status statusOf(symflow::ErrorCode c) { return static_cast<sf_status>(static_cast<int>(c) + 1); }

template <typename F>
sf_status guard(F&& f) {
  try {
    f();
    lastError.clear();
    return SF_OK;
  } catch (const symflow::Error& e) {
    lastError = e.what();
    return statusOf(e.code());
  } catch (const nlohmann::json::exception& e) {
    lastError = e.what();
    return SF_ERR_PARSE;
  } catch (const std::exception& e) {
    lastError = e.what();
    return SF_ERR_INTERNAL;
  } catch (...) {
    lastError = "unknown failure";
    return SF_ERR_INTERNAL;
  }
}

sf_status nullArg() {
  lastError = "null argument";
  return SF_ERR_NULL;
}

#define SF_REQUIRE(...)                                          \
  do {                                                           \
    const void* ptrs_[] = {__VA_ARGS__};                         \
    for (const void* p_ : ptrs_)                                 \
      if (!p_) return nullArg();                                 \
  } while (0)

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_status_name(sf_status status) {
  if (status == SF_OK) return "Ok";
  if (status == SF_ERR_NULL) return "Null";
  if (status == SF_ERR_INTERNAL) return "Internal";
  int i = static_cast<int>(status) - 1;
  if (i < 0 || i > static_cast<int>(symflow::ErrorCode::Io)) return "Unknown";
  return symflow::errorCodeName(static_cast<symflow::ErrorCode>(i));
}

const char* sf_last_error(void) { return lastError.c_str(); }

sf_status sf_subshift_from_json(const char* json, sf_subshift** out) {
  SF_REQUIRE(json, out);
  return guard([&] { *out = new sf_subshift{symflow::io::subshiftFrom(nlohmann::json::parse(json))}; });
}

void sf_subshift_free(sf_subshift* s) { delete s; }

sf_status sf_subshift_alphabet(const sf_subshift* s, size_t* out) {
  SF_REQUIRE(s, out);
  return guard([&] { *out = s->value.alphabetSize(); });
}

sf_status sf_subshift_entropy(const sf_subshift* s, size_t horizon, double* value, int* exact) {
  SF_REQUIRE(s, value);
  return guard([&] {
    symflow::EntropyValue e = s->value.topologicalEntropy(horizon);
    *value = e.value;
    if (exact) *exact = e.exact ? 1 : 0;
  });
}

sf_status sf_subshift_language_size(const sf_subshift* s, size_t n, double* out) {
  SF_REQUIRE(s, out);
  return guard([&] { *out = s->value.languageSize(n).get_d(); });
}

sf_status sf_subshift_fixed_count(const sf_subshift* s, size_t n, uint64_t* out) {
  SF_REQUIRE(s, out);
  return guard([&] { *out = s->value.periodicWords(n).size(); });
}

sf_status sf_marker_build(const sf_subshift* s, size_t n, size_t max_word_len, size_t depth, char* buf, size_t cap,
                          int* certified) {
  SF_REQUIRE(s, buf);
  return guard([&] {
    symflow::MarkerSet m = symflow::buildMarker(s->value, n, max_word_len, depth);
    std::string w = symflow::to_string(m.word);
    if (w.size() + 1 > cap) symflow::fail(symflow::ErrorCode::CapacityExceeded, "marker word does not fit the buffer");
    std::memcpy(buf, w.c_str(), w.size() + 1);
    if (certified) {
      symflow::MarkerCertificate c = symflow::certifyMarker(s->value, m, depth);
      *certified = c.disjoint && c.coverage ? 1 : 0;
    }
  });
}

sf_status sf_measure_from_json(const char* json, sf_measure** out) {
  SF_REQUIRE(json, out);
  return guard([&] { *out = new sf_measure{symflow::io::measureFrom(nlohmann::json::parse(json))}; });
}

void sf_measure_free(sf_measure* m) { delete m; }

sf_status sf_measure_mass(const sf_measure* m, const char* word, double* out) {
  SF_REQUIRE(m, word, out);
  return guard([&] { *out = m->value->mass(symflow::parseWord(word)); });
}

sf_status sf_measure_entropy_rate(const sf_measure* m, double* out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = symflow::entropyRate(*m->value); });
}

sf_status sf_measure_invariant(const sf_measure* m, int* out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = m->value->verifyInvariance() ? 1 : 0; });
}

sf_status sf_flow_from_json(const char* json, sf_flow** out) {
  SF_REQUIRE(json, out);
  return guard([&] { *out = new sf_flow{symflow::io::flowFrom(nlohmann::json::parse(json))}; });
}

void sf_flow_free(sf_flow* f) { delete f; }

sf_status sf_flow_min_roof(const sf_flow* f, double* out) {
  SF_REQUIRE(f, out);
  return guard([&] { *out = f->value.roof().minValue().toDouble(); });
}

sf_status sf_census_build(const sf_subshift* s, size_t max_period, sf_census** out) {
  SF_REQUIRE(s, out);
  return guard([&] { *out = new sf_census{symflow::periodicCensus(s->value, max_period)}; });
}

void sf_census_free(sf_census* c) { delete c; }

sf_status sf_census_orbit_count(const sf_census* c, size_t* out) {
  SF_REQUIRE(c, out);
  return guard([&] { *out = c->value.orbits.size(); });
}

sf_status sf_census_growth(const sf_census* c, double* value, double* cumulative_sup) {
  SF_REQUIRE(c, value);
  return guard([&] {
    symflow::PeriodicGrowth g = symflow::globalPeriodicGrowth(c->value);
    *value = g.value;
    if (cumulative_sup) *cumulative_sup = g.cumulativeSup;
  });
}

sf_status sf_census_pk(const sf_census* c, size_t orbit, double eps, int count_measures, double* out) {
  SF_REQUIRE(c, out);
  return guard([&] {
    *out = symflow::pk(c->value, orbit, eps, count_measures ? symflow::PkCount::Measures : symflow::PkCount::Orbits);
  });
}

sf_status sf_lab_run(const char* config_json, uint64_t seed, const char* base_dir, const char* out_dir,
                     sf_lab_result** out) {
  SF_REQUIRE(config_json, out);
  *out = nullptr;
  sf_status st = guard([&] {
    *out = new sf_lab_result{symflow::runLab(config_json, seed, base_dir ? base_dir : ".")};
    if (out_dir) symflow::writeLabOutcome((*out)->value, out_dir);
  });
  if (st != SF_OK || (*out)->value.exitCode == 0) return st;
  // report the experiment's own failure through the status as well
  auto j = nlohmann::json::parse((*out)->value.errorJson);
  lastError = j.value("message", "");
  const std::string code = j.value("error", "");
  for (int i = 0; i <= static_cast<int>(symflow::ErrorCode::Io); ++i)
    if (code == symflow::errorCodeName(static_cast<symflow::ErrorCode>(i))) return statusOf(static_cast<symflow::ErrorCode>(i));
  return SF_ERR_INTERNAL;
}

void sf_lab_result_free(sf_lab_result* r) { delete r; }
int sf_lab_result_exit_code(const sf_lab_result* r) { return r ? r->value.exitCode : -1; }
const char* sf_lab_result_error_json(const sf_lab_result* r) { return r ? r->value.errorJson.c_str() : ""; }
const char* sf_lab_result_config_hash(const sf_lab_result* r) { return r ? r->value.configHash.c_str() : ""; }
const char* sf_lab_result_out_dir(const sf_lab_result* r) { return r ? r->value.outDir.c_str() : ""; }
size_t sf_lab_result_file_count(const sf_lab_result* r) { return r ? r->value.files.size() : 0; }

const char* sf_lab_result_file_name(const sf_lab_result* r, size_t i) {
  return r && i < r->value.files.size() ? r->value.files[i].name.c_str() : nullptr;
}

const char* sf_lab_result_file_contents(const sf_lab_result* r, size_t i) {
  return r && i < r->value.files.size() ? r->value.files[i].contents.c_str() : nullptr;
}

sf_status sf_lab_result_write(const sf_lab_result* r, const char* dir) {
  SF_REQUIRE(r, dir);
  return guard([&] { symflow::writeLabOutcome(r->value, dir); });
}

size_t sf_lab_experiment_count(void) { return symflow::labExperiments().size(); }

const char* sf_lab_experiment_name(size_t i) {
  const auto& v = symflow::labExperiments();
  return i < v.size() ? v[i].c_str() : nullptr;
}

}  // extern "C"
