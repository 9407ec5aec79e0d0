#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "estermann/estermann.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  est_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("instance lifecycle and JSON") {
  est_instance* inst = nullptr;
  REQUIRE(est_instance_create(12, "3/2", "1/4,1/4,1/2", 3, &inst) == EST_OK);
  char* raw = nullptr;
  REQUIRE(est_instance_to_json(inst, &raw) == EST_OK);
  const auto j = nlohmann::json::parse(take(raw));
  CHECK(j.at("c") == "3/2");
  CHECK(j.at("mu") == nlohmann::json::array({"1/4", "1/4", "1/2"}));

  est_instance* back = nullptr;
  REQUIRE(est_instance_from_json(j.dump().c_str(), &back) == EST_OK);
  uint64_t a = 0, b = 0;
  CHECK(est_count_total(inst, EST_COUNT_FAST, nullptr, &a) == EST_OK);
  CHECK(est_count_total(back, EST_COUNT_CONVOLUTION, nullptr, &b) == EST_OK);
  CHECK(a == 3);
  CHECK(b == 3);
  est_instance_destroy(back);
  est_instance_destroy(inst);
  est_instance_destroy(nullptr);
}

TEST_CASE("error codes and messages") {
  est_instance* inst = reinterpret_cast<est_instance*>(0x1);
  CHECK(est_instance_create(100, "2", "1/3,1/3,1/3", 1, &inst) == EST_ERR_INTEGER_EXPONENT);
  CHECK(inst == nullptr);
  CHECK(std::strlen(est_last_error()) > 0);
  CHECK(est_instance_create(100, "3/2", "1/2,1/2,1/2", 1, &inst) == EST_ERR_MU_SUM_NOT_ONE);
  CHECK(est_instance_create(100, "1/2", "1/3,1/3,1/3", 1, &inst) == EST_ERR_EXPONENT_TOO_SMALL);
  CHECK(est_instance_create(100, "3/2", "1/4,1/4,1/2", 30, &inst) == EST_ERR_WINDOW_TOO_WIDE);
  CHECK(est_instance_create(100, "1.5", "1/3,1/3,1/3", 1, &inst) == EST_ERR_PARSE);
  CHECK(est_instance_create(100, nullptr, "1/3,1/3,1/3", 1, &inst) == EST_ERR_INVALID_ARGUMENT);
  CHECK(est_instance_from_json("{not json", &inst) == EST_ERR_PARSE);
  CHECK(std::string(est_status_name(EST_ERR_ORACLE_LIMIT)) == "OracleLimitExceeded");

  REQUIRE(est_instance_create(5000, "3/2", "1/3,1/3,1/3", 10, &inst) == EST_OK);
  est_options o;
  est_options_init(&o);
  o.oracle_limit = 100;
  uint64_t total = 0;
  CHECK(est_count_total(inst, EST_COUNT_BRUTE_FORCE, &o, &total) == EST_ERR_ORACLE_LIMIT);
  CHECK(est_count_total(inst, EST_COUNT_FAST, &o, &total) == EST_OK);
  CHECK(std::string(est_last_error()).empty());
  est_instance_destroy(inst);
}

TEST_CASE("breakdowns, arcs and grids") {
  est_instance* inst = nullptr;
  REQUIRE(est_instance_create(12, "3/2", "1/4,1/4,1/2", 3, &inst) == EST_OK);
  char* raw = nullptr;
  REQUIRE(est_count_breakdown(inst, EST_COUNT_BRUTE_FORCE, EST_FORMAT_CSV, nullptr, &raw) == EST_OK);
  CHECK(take(raw) == "n,v,r\n3,5,2\n4,8,1\n");
  REQUIRE(est_count_breakdown(inst, EST_COUNT_FAST, EST_FORMAT_JSON, nullptr, &raw) == EST_OK);
  CHECK(nlohmann::json::parse(take(raw)).at("total") == 3);

  REQUIRE(est_arcs_json(inst, EST_MODE_EXACT, 1e-6, nullptr, &raw) == EST_OK);
  const auto arcs = nlohmann::json::parse(take(raw));
  CHECK(arcs.at("exact_total") == 3);
  CHECK(arcs.at("arc_separation") == false);

  REQUIRE(est_expsum_grid_csv(inst, EST_SUM_SC, 0, 0.5, 11, nullptr, &raw) == EST_OK);
  const std::string csv = take(raw);
  CHECK(csv.rfind("alpha,re,im,abs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  CHECK(est_expsum_grid_csv(inst, EST_SUM_SC, 0, 0.5, 0, nullptr, &raw) == EST_ERR_INVALID_ARGUMENT);

  REQUIRE(est_derived_params_json(inst, &raw) == EST_OK);
  CHECK(nlohmann::json::parse(take(raw)).at("kappa").get<double>() > 0.5);
  REQUIRE(est_hypothesis_report_json(inst, &raw) == EST_OK);
  CHECK(nlohmann::json::parse(take(raw)).at("conditions").size() == 6);

  const est_instance* list[] = {inst, inst};
  REQUIRE(est_sweep_csv(list, 2, EST_MODE_MODEL, 1e-6, nullptr, &raw) == EST_OK);
  const std::string sweep = take(raw);
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 3);
  est_instance_destroy(inst);
}

TEST_CASE("scalar helpers") {
  uint64_t v = 0;
  CHECK(est_floor_pow(5, 3, 2, &v) == EST_OK);
  CHECK(v == 11);
  CHECK(est_floor_pow(5, 4, 2, &v) == EST_ERR_INVALID_ARGUMENT);
  CHECK(est_pi_interval(100, 50, nullptr, &v) == EST_OK);
  CHECK(v == 10);
  double psi = 0;
  CHECK(est_psi(10, nullptr, &psi) == EST_OK);
  CHECK(psi == doctest::Approx(3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0)).epsilon(1e-14));
  double re = 0, im = 0;
  CHECK(est_eval_sum(EST_SUM_SC, 0.5, 5, 3, 3, 2, nullptr, &re, &im) == EST_OK);
  CHECK(re == doctest::Approx(-1.0));
  CHECK(est_eval_sum(EST_SUM_PRIME, 0.5, 6, 4, 0, 0, nullptr, &re, &im) == EST_OK);
  CHECK(re == doctest::Approx(-2.0));
  CHECK(std::string(est_version()).size() > 0);
}
