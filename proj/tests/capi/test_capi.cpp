#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "iemcoh/iemcoh.h"
#include "json.hpp"

#ifndef IEMCOH_TEST_DATA
#error "IEMCOH_TEST_DATA must point at tests/data"
#endif

namespace {

using Json = nlohmann::json;

std::string data(const char* name) {
  std::ifstream in(std::string(IEMCOH_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Str {
  char* s = nullptr;
  ~Str() { iemcoh_string_free(s); }
  Json json() const { return Json::parse(s); }
};

struct Fixture {
  iemcoh_iem* t = nullptr;
  iemcoh_path* p = nullptr;
  iemcoh_observable* phi = nullptr;
  ~Fixture() {
    iemcoh_observable_free(phi);
    iemcoh_path_free(p);
    iemcoh_iem_free(t);
  }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and null handles") {
  CHECK(std::strlen(iemcoh_version()) > 0);
  iemcoh_iem_free(nullptr);
  iemcoh_path_free(nullptr);
  iemcoh_observable_free(nullptr);
  iemcoh_string_free(nullptr);
  iemcoh_iem* t = nullptr;
  CHECK(iemcoh_iem_from_json(nullptr, 0, &t) == IEMCOH_ERR_DOMAIN);
  CHECK(t == nullptr);
}

TEST_CASE("describe through the C boundary") {
  Fixture f;
  REQUIRE(iemcoh_iem_from_json(data("reversal4.json").c_str(), 0, &f.t) == IEMCOH_OK);
  CHECK(iemcoh_iem_size(f.t) == 4);
  Str out;
  REQUIRE(iemcoh_describe(f.t, &out.s) == IEMCOH_OK);
  Json j = out.json();
  CHECK(j["d"] == 4);
  CHECK(j["g"] == 2);
  CHECK(j["s"] == 1);
}

TEST_CASE("input errors carry messages") {
  iemcoh_iem* t = nullptr;
  CHECK(iemcoh_iem_from_json(data("reducible.json").c_str(), 0, &t) == IEMCOH_ERR_INPUT);
  CHECK(std::string(iemcoh_last_error()) == "reducible at k=1");
  CHECK(iemcoh_iem_from_json(data("malformed.json").c_str(), 0, &t) == IEMCOH_ERR_INPUT);
  CHECK(iemcoh_iem_from_json(data("golden.json").c_str(), 8, &t) == IEMCOH_ERR_INPUT);
  CHECK(t == nullptr);
}

TEST_CASE("connection screening") {
  Fixture f;
  REQUIRE(iemcoh_iem_from_json(data("swap_rational.json").c_str(), 0, &f.t) == IEMCOH_OK);
  CHECK(iemcoh_check_connection(f.t, 100) == IEMCOH_ERR_CONNECTION);
  CHECK(std::string(iemcoh_last_error()) == "connection detected at step 2");
  REQUIRE(iemcoh_path_new(f.t, 10, &f.p) == IEMCOH_OK);
  CHECK(iemcoh_path_length(f.p) == 2);
  CHECK(iemcoh_path_require_complete(f.p) == IEMCOH_ERR_CONNECTION);
}

TEST_CASE("golden path and diagnostics") {
  Fixture f;
  REQUIRE(iemcoh_iem_from_json(data("golden.json").c_str(), 0, &f.t) == IEMCOH_OK);
  CHECK(iemcoh_check_connection(f.t, 10000) == IEMCOH_OK);
  REQUIRE(iemcoh_path_new(f.t, 24, &f.p) == IEMCOH_OK);
  Str path;
  REQUIRE(iemcoh_path_json(f.p, &path.s) == IEMCOH_OK);
  Json j = path.json();
  CHECK(j["length"] == 24);
  CHECK(j["steps"].size() == 24);
  // B(0,24) for the golden rotation is [[F25, F24], [F24, F23]].
  CHECK(j["b_total"][0][0] == "75025");
  CHECK(j["b_total"][0][1] == "46368");
  CHECK(j["b_total"][1][1] == "28657");

  iemcoh_thresholds th;
  iemcoh_default_thresholds(&th);
  Str report;
  REQUIRE(iemcoh_diagnose(f.p, &th, &report.s) == IEMCOH_OK);
  Json r = report.json();
  for (const char* c : {"a", "b", "c", "d"}) CHECK(r[c]["verdict"] == "pass");
}

TEST_CASE("solve, decompose and holder") {
  Fixture f;
  REQUIRE(iemcoh_iem_from_json(data("golden.json").c_str(), 0, &f.t) == IEMCOH_OK);
  REQUIRE(iemcoh_observable_from_json(f.t, data("coboundary_x1mx.json").c_str(), &f.phi) == IEMCOH_OK);
  REQUIRE(iemcoh_path_new(f.t, 64, &f.p) == IEMCOH_OK);
  iemcoh_solve_options opts;
  iemcoh_default_solve_options(&opts);
  opts.samples = 4000;
  Str report, csv;
  REQUIRE(iemcoh_solve(f.p, f.phi, &opts, &report.s, &csv.s) == IEMCOH_OK);
  Json r = report.json();
  CHECK(std::stod(r["chi_norm"].get<std::string>()) < 1e-6);
  CHECK(r["psi"]["residual_ok"] == true);
  CHECK(std::string(csv.s).rfind("x,psi\n", 0) == 0);

  Str holder;
  REQUIRE(iemcoh_holder(csv.s, 100000, 0, &holder.s) == IEMCOH_OK);
  CHECK(std::stod(holder.json()["delta_hat"].get<std::string>()) > 0.8);

  Str time;
  REQUIRE(iemcoh_decompose_time(f.p, "0.1", 500, &time.s) == IEMCOH_OK);
  Json tj = time.json();
  CHECK(tj["n_plus"].get<long>() - tj["n_minus"].get<long>() == 500);
  Str space;
  REQUIRE(iemcoh_decompose_space(f.p, "0.2", "0.7", &space.s) == IEMCOH_OK);
  CHECK(space.json()["k"].get<int>() >= 1);
  CHECK(iemcoh_decompose_space(f.p, "0.7", "0.2", &space.s) == IEMCOH_ERR_DOMAIN);
  CHECK(iemcoh_decompose_time(f.p, "abc", 5, &time.s) == IEMCOH_ERR_INPUT);
}

TEST_CASE("boundary and convergence failures map to their status codes") {
  Fixture f;
  REQUIRE(iemcoh_iem_from_json(data("reversal3.json").c_str(), 0, &f.t) == IEMCOH_OK);
  REQUIRE(iemcoh_observable_from_json(f.t, data("boundary_defect.json").c_str(), &f.phi) == IEMCOH_OK);
  REQUIRE(iemcoh_path_new(f.t, 64, &f.p) == IEMCOH_OK);
  iemcoh_solve_options opts;
  iemcoh_default_solve_options(&opts);
  char* report = nullptr;
  char* csv = nullptr;
  CHECK(iemcoh_solve(f.p, f.phi, &opts, &report, &csv) == IEMCOH_ERR_BOUNDARY);
  CHECK(report == nullptr);
  CHECK(std::string(iemcoh_last_error()) == "datum not in kernel of boundary operator");

  Fixture g;
  REQUIRE(iemcoh_iem_from_json(data("golden.json").c_str(), 0, &g.t) == IEMCOH_OK);
  REQUIRE(iemcoh_observable_from_json(g.t, data("coboundary_x1mx.json").c_str(), &g.phi) == IEMCOH_OK);
  REQUIRE(iemcoh_path_new(g.t, 10, &g.p) == IEMCOH_OK);
  CHECK(iemcoh_solve(g.p, g.phi, &opts, &report, &csv) == IEMCOH_ERR_CONVERGENCE);
}

}
