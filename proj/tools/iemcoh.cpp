#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "iemcoh/iemcoh.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

struct Config {
  std::string input;
  std::string observable;
  long precision_bits = 256;
  std::size_t max_steps = 64;
  std::size_t connection_depth = 10000;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  // solve
  std::size_t samples = 10000;
  std::string psi_out;
  // decompose
  std::string x;
  std::size_t n = 0;
  std::string x_minus, x_plus;
  // holder
  std::size_t pair_budget = 200000;
};

void check(iemcoh_status s) {
  if (s != IEMCOH_OK) throw Failure{static_cast<int>(s), iemcoh_last_error()};
}

std::string read_file(const std::string& path, const char* what) {
  if (path.empty()) throw Failure{IEMCOH_ERR_INPUT, std::string("missing --") + what};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{IEMCOH_ERR_INPUT, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{IEMCOH_ERR_INPUT, "cannot write " + path};
}

struct Owned {
  char* s = nullptr;
  ~Owned() { iemcoh_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

using IemPtr = std::unique_ptr<iemcoh_iem, decltype(&iemcoh_iem_free)>;
using PathPtr = std::unique_ptr<iemcoh_path, decltype(&iemcoh_path_free)>;
using ObsPtr = std::unique_ptr<iemcoh_observable, decltype(&iemcoh_observable_free)>;

IemPtr load_iem(const Config& c) {
  const std::string text = read_file(c.input, "input");
  iemcoh_iem* t = nullptr;
  check(iemcoh_iem_from_json(text.c_str(), c.precision_bits, &t));
  return IemPtr(t, iemcoh_iem_free);
}

PathPtr load_path(const Config& c, const iemcoh_iem* t) {
  check(iemcoh_check_connection(t, c.connection_depth));
  iemcoh_path* p = nullptr;
  check(iemcoh_path_new(t, c.max_steps, &p));
  return PathPtr(p, iemcoh_path_free);
}

void cmd_describe(const Config& c) {
  IemPtr t = load_iem(c);
  Owned json;
  check(iemcoh_describe(t.get(), &json.s));
  Json j = Json::parse(json.str());
  if (c.format == "json" && !c.out.empty()) write_output(c.out, json.str());
  std::cout << "d=" << j["d"] << " g=" << j["g"] << " s=" << j["s"] << "\n";
  std::cout << "top:    ";
  for (const auto& a : j["top"]) std::cout << a.get<std::string>() << ' ';
  std::cout << "\nbottom: ";
  for (const auto& a : j["bottom"]) std::cout << a.get<std::string>() << ' ';
  std::cout << "\nirreducible: yes\nOmega:\n";
  for (const auto& row : j["omega"]) {
    std::cout << "  ";
    for (const auto& e : row) std::printf("%3s", e.get<std::string>().c_str());
    std::cout << "\n";
  }
  std::cout << "sigma cycles:\n";
  for (const auto& cyc : j["sigma_cycles"]) {
    std::cout << "  (";
    bool first = true;
    for (const auto& v : cyc) {
      std::cout << (first ? "" : " ") << v.get<std::string>();
      first = false;
    }
    std::cout << ")\n";
  }
}

void cmd_renormalize(const Config& c) {
  IemPtr t = load_iem(c);
  iemcoh_path* raw = nullptr;
  check(iemcoh_path_new(t.get(), c.max_steps, &raw));
  PathPtr p(raw, iemcoh_path_free);
  Owned json;
  check(iemcoh_path_json(p.get(), &json.s));
  if (c.format == "csv") {
    Json j = Json::parse(json.str());
    std::string csv = "step,type,winner,loser\n";
    for (const auto& s : j["steps"]) {
      csv += std::to_string(s["index"].get<std::size_t>()) + "," + s["type"].get<std::string>() + "," +
             s["winner"].get<std::string>() + "," + s["loser"].get<std::string>() + "\n";
    }
    write_output(c.out, csv);
  } else {
    write_output(c.out, json.str());
  }
  check(iemcoh_path_require_complete(p.get()));
}

void cmd_diagnose(const Config& c) {
  IemPtr t = load_iem(c);
  PathPtr p = load_path(c, t.get());
  check(iemcoh_path_require_complete(p.get()));
  iemcoh_thresholds th;
  iemcoh_default_thresholds(&th);
  Owned json;
  check(iemcoh_diagnose(p.get(), &th, &json.s));
  if (c.format == "csv") {
    Json j = Json::parse(json.str());
    std::string csv = "condition,value,verdict\n";
    csv += "a," + j["a"]["tau_hat"].get<std::string>() + "," + j["a"]["verdict"].get<std::string>() + "\n";
    csv += "b," + j["b"]["theta_hat"].get<std::string>() + "," + j["b"]["verdict"].get<std::string>() + "\n";
    csv += "c," + j["c"]["stable_exponent"].get<std::string>() + "," + j["c"]["verdict"].get<std::string>() + "\n";
    csv += "d," + j["d"]["gap_ratio"].get<std::string>() + "," + j["d"]["verdict"].get<std::string>() + "\n";
    write_output(c.out, csv);
    return;
  }
  write_output(c.out, json.str());
  if (!c.out.empty() && c.out != "-") {
    Json j = Json::parse(json.str());
    std::printf("horizon %zu\n", j["horizon"].get<std::size_t>());
    std::printf("  (a) tau_hat     %-22s %s\n", j["a"]["tau_hat"].get<std::string>().c_str(),
                j["a"]["verdict"].get<std::string>().c_str());
    std::printf("  (b) theta_hat   %-22s %s\n", j["b"]["theta_hat"].get<std::string>().c_str(),
                j["b"]["verdict"].get<std::string>().c_str());
    std::printf("  (c) stable exp  %-22s %s\n", j["c"]["stable_exponent"].get<std::string>().c_str(),
                j["c"]["verdict"].get<std::string>().c_str());
    std::printf("  (d) gap_ratio   %-22s %s\n", j["d"]["gap_ratio"].get<std::string>().c_str(),
                j["d"]["verdict"].get<std::string>().c_str());
  }
}

void cmd_solve(const Config& c) {
  IemPtr t = load_iem(c);
  const std::string obs_text = read_file(c.observable, "observable");
  iemcoh_observable* raw = nullptr;
  check(iemcoh_observable_from_json(t.get(), obs_text.c_str(), &raw));
  ObsPtr phi(raw, iemcoh_observable_free);
  PathPtr p = load_path(c, t.get());
  iemcoh_solve_options opts;
  iemcoh_default_solve_options(&opts);
  opts.tolerance = c.tolerance;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.pair_budget = c.pair_budget;
  Owned json, csv;
  const iemcoh_status s = iemcoh_solve(p.get(), phi.get(), &opts, &json.s, &csv.s);
  const std::string message = iemcoh_last_error();
  if (json.s) {
    std::string psi_path = c.psi_out;
    if (psi_path.empty() && !c.out.empty() && c.out != "-") psi_path = c.out + ".psi.csv";
    if (c.format == "csv") {
      write_output(c.out, csv.str());
    } else {
      write_output(c.out, json.str());
      if (!psi_path.empty()) write_output(psi_path, csv.str());
    }
  }
  if (s != IEMCOH_OK) throw Failure{static_cast<int>(s), message};
}

void cmd_decompose(const Config& c) {
  IemPtr t = load_iem(c);
  PathPtr p = load_path(c, t.get());
  check(iemcoh_path_require_complete(p.get()));
  Json out = Json::object();
  if (!c.x.empty()) {
    if (c.n == 0) throw Failure{IEMCOH_ERR_INPUT, "--n must be positive for a time decomposition"};
    Owned json;
    check(iemcoh_decompose_time(p.get(), c.x.c_str(), c.n, &json.s));
    out["time"] = Json::parse(json.str());
  }
  if (!c.x_minus.empty() || !c.x_plus.empty()) {
    Owned json;
    check(iemcoh_decompose_space(p.get(), c.x_minus.c_str(), c.x_plus.c_str(), &json.s));
    out["space"] = Json::parse(json.str());
  }
  if (out.empty()) throw Failure{IEMCOH_ERR_INPUT, "decompose needs --x/--n or --x-minus/--x-plus"};
  write_output(c.out, out.dump(2) + "\n");
}

void cmd_holder(const Config& c) {
  const std::string text = read_file(c.input, "input");
  Owned json;
  check(iemcoh_holder(text.c_str(), c.pair_budget, c.seed, &json.s));
  if (c.format == "csv") {
    Json j = Json::parse(json.str());
    std::string csv = "distance,max_diff,pairs\n";
    for (const auto& b : j["bins"]) {
      csv += b["distance"].get<std::string>() + "," + b["max_diff"].get<std::string>() + "," +
             std::to_string(b["pairs"].get<std::size_t>()) + "\n";
    }
    write_output(c.out, csv);
  } else {
    write_output(c.out, json.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomological equation solver for interval exchange maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--input", c.input, "IEM JSON (psi CSV for holder)");
  app.add_option("--observable", c.observable, "Observable JSON");
  app.add_option("--precision-bits", c.precision_bits, "Working precision in bits")->capture_default_str()
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--max-steps", c.max_steps, "Rauzy-Veech steps")->capture_default_str();
  app.add_option("--connection-depth", c.connection_depth, "Orbit depth of the connection scan")->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Solver tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for sampling")->capture_default_str();
  app.add_option("--out", c.out, "Output file (stdout if omitted)");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* describe = app.add_subcommand("describe", "Combinatorial invariants");
  auto* renormalize = app.add_subcommand("renormalize", "Rauzy-Veech path export");
  auto* diagnose = app.add_subcommand("diagnose", "Finite-horizon Roth type diagnostics");
  auto* solve = app.add_subcommand("solve", "Solve the cohomological equation");
  solve->add_option("--samples", c.samples, "Orbit samples for psi")->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--psi-out", c.psi_out, "psi CSV path (default <out>.psi.csv)");
  solve->add_option("--pair-budget", c.pair_budget, "Pairs for the Hölder fit")->capture_default_str();
  auto* decompose = app.add_subcommand("decompose", "Time and space decompositions");
  decompose->add_option("--x", c.x, "Orbit start (decimal)");
  decompose->add_option("--n", c.n, "Orbit length");
  decompose->add_option("--x-minus", c.x_minus, "Left end (decimal)");
  decompose->add_option("--x-plus", c.x_plus, "Right end (decimal)");
  auto* holder = app.add_subcommand("holder", "Hölder exponent fit of psi samples");
  holder->add_option("--pair-budget", c.pair_budget, "Pairs for the fit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : IEMCOH_ERR_INPUT;
  }

  try {
    if (*describe) cmd_describe(c);
    else if (*renormalize) cmd_renormalize(c);
    else if (*diagnose) cmd_diagnose(c);
    else if (*solve) cmd_solve(c);
    else if (*decompose) cmd_decompose(c);
    else if (*holder) cmd_holder(c);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return IEMCOH_ERR_INTERNAL;
  }
  return 0;
}
