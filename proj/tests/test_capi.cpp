#include <cmath>
#include <string>

#include "doctest.h"
#include "symflow/symflow.h"

namespace {
const char* kGolden = R"({"kind":"sft","adjacency":["11","10"]})";
const char* kFull2 = R"({"kind":"full","alphabet":2})";
}  // namespace

TEST_CASE("subshift handles") {
  sf_subshift* s = nullptr;
  REQUIRE(sf_subshift_from_json(kGolden, &s) == SF_OK);
  size_t k = 0;
  CHECK(sf_subshift_alphabet(s, &k) == SF_OK);
  CHECK(k == 2);
  double h = 0;
  int exact = 0;
  CHECK(sf_subshift_entropy(s, 20, &h, &exact) == SF_OK);
  CHECK(exact == 1);
  CHECK(std::abs(h - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-12);
  double l20 = 0;
  CHECK(sf_subshift_language_size(s, 20, &l20) == SF_OK);
  CHECK(l20 == 17711);  // Fibonacci F_22
  const uint64_t lucas[] = {1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322};
  for (size_t n = 1; n <= 12; ++n) {
    uint64_t f = 0;
    CHECK(sf_subshift_fixed_count(s, n, &f) == SF_OK);
    CHECK(f == lucas[n - 1]);
  }
  sf_subshift_free(s);
}

TEST_CASE("errors carry a status and a message") {
  sf_subshift* s = nullptr;
  CHECK(sf_subshift_from_json("{not json", &s) == SF_ERR_PARSE);
  CHECK(std::string(sf_last_error()).size() > 0);
  CHECK(sf_subshift_from_json(nullptr, &s) == SF_ERR_NULL);
  CHECK(std::string(sf_status_name(SF_ERR_PRECONDITION_FAILED)) == "PreconditionFailed");
  CHECK(std::string(sf_status_name(SF_ERR_NO_MARKER_FOUND)) == "NoMarkerFound");

  REQUIRE(sf_subshift_from_json(kFull2, &s) == SF_OK);
  char buf[32];
  CHECK(sf_marker_build(s, 3, 16, 40, buf, sizeof buf, nullptr) == SF_ERR_NO_MARKER_FOUND);
  CHECK(std::string(sf_last_error()).find("period") != std::string::npos);
  sf_subshift_free(s);
}

TEST_CASE("measures, flows and census") {
  sf_measure* m = nullptr;
  REQUIRE(sf_measure_from_json(R"({"kind":"markov","P":[["1/2","1/2"],["1","0"]]})", &m) == SF_OK);
  double v = 0;
  CHECK(sf_measure_mass(m, "0", &v) == SF_OK);
  CHECK(v == doctest::Approx(2.0 / 3));
  int inv = 0;
  CHECK(sf_measure_invariant(m, &inv) == SF_OK);
  CHECK(inv == 1);
  CHECK(sf_measure_entropy_rate(m, &v) == SF_OK);
  CHECK(v == doctest::Approx(2.0 / 3 * std::log(2.0)));
  sf_measure_free(m);

  sf_flow* f = nullptr;
  REQUIRE(sf_flow_from_json(R"({"base":{"kind":"full","alphabet":2},"roof":{"kind":"symbol","values":["1/2","3"]}})",
                            &f) == SF_OK);
  CHECK(sf_flow_min_roof(f, &v) == SF_OK);
  CHECK(v == 0.5);
  sf_flow_free(f);

  sf_subshift* s = nullptr;
  REQUIRE(sf_subshift_from_json(kFull2, &s) == SF_OK);
  sf_census* c = nullptr;
  REQUIRE(sf_census_build(s, 8, &c) == SF_OK);
  size_t orbits = 0;
  CHECK(sf_census_orbit_count(c, &orbits) == SF_OK);
  CHECK(orbits == 2 + 1 + 2 + 3 + 6 + 9 + 18 + 30);  // necklace counts
  double g = 0, cum = 0;
  CHECK(sf_census_growth(c, &g, &cum) == SF_OK);
  CHECK(g == doctest::Approx(std::log(2.0)));
  CHECK(sf_census_pk(c, 0, 100.0, 0, &v) == SF_OK);
  CHECK(v == doctest::Approx(std::log(2.0)));
  CHECK(sf_census_pk(c, 10000, 1.0, 0, &v) == SF_ERR_INDEX_OUT_OF_RANGE);
  sf_census_free(c);
  sf_subshift_free(s);
}

TEST_CASE("lab through the C API") {
  CHECK(sf_lab_experiment_count() == 10);
  sf_lab_result* r = nullptr;
  const std::string cfg = std::string(R"({"experiment":"entropy","system":)") + kGolden + "}";
  REQUIRE(sf_lab_run(cfg.c_str(), 1, nullptr, nullptr, &r) == SF_OK);
  CHECK(sf_lab_result_exit_code(r) == 0);
  REQUIRE(sf_lab_result_file_count(r) == 1);
  CHECK(std::string(sf_lab_result_file_name(r, 0)) == "entropy.csv");
  CHECK(std::string(sf_lab_result_file_contents(r, 0)).find("perron,,0.48121182505960") != std::string::npos);
  sf_lab_result_free(r);

  REQUIRE(sf_lab_run(R"({"experiment":"nope"})", 1, nullptr, nullptr, &r) == SF_ERR_INVALID_ARGUMENT);
  CHECK(sf_lab_result_exit_code(r) == 2);
  CHECK(std::string(sf_lab_result_error_json(r)).find("unknown experiment") != std::string::npos);
  sf_lab_result_free(r);
}
