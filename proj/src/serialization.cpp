#include "serialization.hpp"

#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace iemcoh {

namespace {

std::string as_string(const Json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  fail(ErrorKind::MalformedData, what + " must be a decimal string");
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::MalformedData, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Real> coefficients(const Json& arr, Precision prec, const std::string& what) {
  if (!arr.is_array() || arr.empty()) fail(ErrorKind::MalformedData, what + " must be a non-empty array");
  std::vector<Real> out;
  for (const auto& c : arr) out.push_back(Real::parse(as_string(c, what), prec));
  return out;
}

std::string real_str(const Real& x) { return x.to_string(kDisplayDigits); }
std::string exact_str(const Exact& x, Precision prec) { return exact_to_string(x, kDisplayDigits, prec); }

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const RealVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(real_str(x));
  return out;
}

Json doubles_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(format_double(x));
  return out;
}

Json letters_json(const CombinatorialData& pi, const RealVector& v) {
  Json out = Json::object();
  for (Letter a = 0; a < pi.size(); ++a) out[pi.label(a)] = real_str(v[a]);
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

CombinatorialData combinatorics_from_json(const Json& j) {
  const Json& alpha = member(j, "alphabet");
  if (!alpha.is_array()) fail(ErrorKind::MalformedData, "alphabet must be an array");
  std::vector<std::string> alphabet;
  for (const auto& a : alpha) {
    if (!a.is_string()) fail(ErrorKind::MalformedData, "alphabet labels must be strings");
    alphabet.push_back(a.get<std::string>());
  }
  auto positions = [&](const char* key) {
    const Json& m = member(j, key);
    if (!m.is_object()) fail(ErrorKind::MalformedData, std::string(key) + " must map letters to positions");
    if (m.size() != alphabet.size()) fail(ErrorKind::MalformedData, std::string(key) + " must assign every letter");
    std::vector<int> pos;
    for (const auto& a : alphabet) {
      if (!m.contains(a) || !m.at(a).is_number_integer()) {
        fail(ErrorKind::MalformedData, std::string(key) + " has no integer position for '" + a + "'");
      }
      pos.push_back(m.at(a).get<int>());
    }
    return pos;
  };
  return CombinatorialData(alphabet, positions("pi_top"), positions("pi_bottom"));
}

Iem iem_from_json(const Json& j, std::optional<Precision> precision) {
  CombinatorialData pi = combinatorics_from_json(j);
  Precision prec = kDefaultPrecision;
  if (precision) prec = *precision;
  else if (j.contains("precision_bits")) {
    if (!j.at("precision_bits").is_number_integer() || j.at("precision_bits").get<long>() < 64) {
      fail(ErrorKind::MalformedData, "precision_bits must be an integer >= 64");
    }
    prec = j.at("precision_bits").get<long>();
  }
  const Json& lens = member(j, "lengths");
  if (!lens.is_object()) fail(ErrorKind::MalformedData, "lengths must map letters to decimal strings");
  std::vector<std::string> values;
  for (const auto& a : pi.alphabet()) {
    if (!lens.contains(a)) fail(ErrorKind::MalformedData, "missing length for '" + a + "'");
    values.push_back(as_string(lens.at(a), "length of '" + a + "'"));
  }
  return Iem::from_decimal(std::move(pi), values, prec);
}

Observable observable_from_json(const Json& j, const Iem& t) {
  const Precision prec = t.precision();
  if (!j.is_object()) fail(ErrorKind::MalformedData, "observable must be a JSON object");
  if (j.contains("coboundary")) return Observable::coboundary(t, 0, coefficients(j.at("coboundary"), prec, "coboundary"));
  if (j.contains("polynomial")) {
    return Observable::global_polynomial(t, 0, coefficients(j.at("polynomial"), prec, "polynomial"));
  }
  const std::size_t level = j.contains("level") ? j.at("level").get<std::size_t>() : 0;
  if (level != 0) fail(ErrorKind::MalformedData, "only level-0 observables can be solved for");
  const Json& pieces = member(j, "pieces");
  std::vector<Polynomial> polys;
  for (const auto& a : t.pi().alphabet()) {
    if (!pieces.contains(a)) fail(ErrorKind::MalformedData, "missing piece for '" + a + "'");
    polys.push_back(coefficients(pieces.at(a), prec, "piece '" + a + "'"));
  }
  return Observable(level, std::move(polys), prec);
}

Json describe_json(const CombinatorialData& pi) {
  GenusMarks gm = genus_and_marks(pi);
  VertexPermutation vp = vertex_permutation(pi);
  Json cycles = Json::array();
  for (const auto& c : vp.cycles) {
    Json names = Json::array();
    for (std::size_t id : c) names.push_back(vp.name(id));
    cycles.push_back(names);
  }
  Json top = Json::array(), bottom = Json::array();
  for (Letter a : pi.top_order()) top.push_back(pi.label(a));
  for (Letter a : pi.bottom_order()) bottom.push_back(pi.label(a));
  return Json{{"d", pi.size()},       {"g", gm.g},           {"s", gm.s},
              {"irreducible", true},  {"top", top},          {"bottom", bottom},
              {"omega", matrix_json(omega_matrix(pi))},      {"sigma_cycles", cycles}};
}

Json path_json(const RenormalizationPath& path) {
  const Precision prec = path.base().precision();
  Json steps = Json::array();
  for (const auto& s : path.steps()) {
    const auto& pi = path.base().pi();
    steps.push_back({{"index", s.index},
                     {"type", to_string(s.type)},
                     {"winner", pi.label(s.winner)},
                     {"loser", pi.label(s.loser)},
                     {"elementary", matrix_json(s.elementary)}});
  }
  Json levels = Json::array();
  for (std::size_t n = 0; n <= path.length(); ++n) {
    const Iem& t = path.level(n);
    Json lens = Json::object();
    for (Letter a = 0; a < t.size(); ++a) lens[t.pi().label(a)] = exact_str(t.length(a), prec);
    levels.push_back(lens);
  }
  Json out{{"length", path.length()},
           {"stop_reason", to_string(path.stop_reason())},
           {"positivity_times", path.nk()},
           {"steps", steps},
           {"lengths", levels},
           {"b_total", matrix_json(path.b_from_origin(path.length()))}};
  if (path.connection_step()) out["connection_step"] = *path.connection_step();
  return out;
}

Json roth_json(const RothReport& r) {
  Json sv = vector_json(r.d.singular_values);
  return Json{
      {"horizon", r.horizon},
      {"a", {{"tau_hat", format_double(r.a.tau_hat)},
             {"ratios", doubles_json(r.a.ratios)},
             {"levels", r.a.levels},
             {"window_start", r.a.window_start},
             {"verdict", to_string(r.a.verdict)}}},
      {"b", {{"theta_hat", format_double(r.b.theta_hat)},
             {"levels", r.b.levels},
             {"log_full", doubles_json(r.b.log_full)},
             {"log_restricted", doubles_json(r.b.log_restricted)},
             {"verdict", to_string(r.b.verdict)}}},
      {"c", {{"sigma_hat", format_double(r.sigma_hat)},
             {"stable_exponent", format_double(r.c.stable_exponent)},
             {"flat_inverse_growth", format_double(r.c.flat_inverse_exponent)},
             {"joint_consistent", r.c.joint_consistent},
             {"levels", r.c.levels},
             {"warnings", r.c.warnings},
             {"verdict", to_string(r.c.verdict)}}},
      {"d", {{"genus", r.d.genus},
             {"stable_dim", r.d.stable_dim},
             {"ker_omega_dim", r.d.ker_omega_dim},
             {"gap_ratio", format_double(r.d.gap_ratio)},
             {"singular_values", sv},
             {"verdict", to_string(r.d.verdict)}}}};
}

Json time_json(const TimeDecomposition& td) {
  const Precision prec = kDefaultPrecision;
  auto blocks = [&](const std::vector<TimeBlock>& part) {
    Json out = Json::array();
    for (const auto& b : part) {
      Json j{{"k", b.k}, {"level", b.level}, {"base", exact_str(b.base, prec)}, {"count", b.count}, {"start", b.start}};
      j["bound"] = b.bound ? Json(b.bound->get_str()) : Json(nullptr);
      out.push_back(j);
    }
    return out;
  };
  return Json{{"x", exact_str(td.x, prec)},           {"n", td.n},
              {"pivot", exact_str(td.pivot, prec)},   {"pivot_index", td.pivot_index},
              {"n_plus", td.n_plus},                  {"n_minus", td.n_minus},
              {"positive", blocks(td.positive)},      {"negative", blocks(td.negative)}};
}

Json space_json(const SpaceDecomposition& sd) {
  const Precision prec = kDefaultPrecision;
  auto intervals = [&](const std::vector<PartitionInterval>& v) {
    Json out = Json::array();
    for (const auto& iv : v) {
      out.push_back({{"level", iv.level},
                     {"alpha", iv.alpha},
                     {"j", iv.j.get_str()},
                     {"left", exact_str(iv.left, prec)},
                     {"right", exact_str(iv.right, prec)}});
    }
    return out;
  };
  Json plus = Json::array(), minus = Json::array(), bounds = Json::array();
  for (const auto& v : sd.tails_plus) plus.push_back(intervals(v));
  for (const auto& v : sd.tails_minus) minus.push_back(intervals(v));
  for (const auto& b : sd.tail_bounds) bounds.push_back(b.get_str());
  Json out{{"x_minus", exact_str(sd.x_minus, prec)},
           {"x_plus", exact_str(sd.x_plus, prec)},
           {"k", sd.k},
           {"core", intervals(sd.core)},
           {"tails_plus", plus},
           {"tails_minus", minus},
           {"tail_bounds", bounds},
           {"remainder", exact_str(sd.remainder, prec)}};
  out["core_bound"] = sd.core_bound ? Json(sd.core_bound->get_str()) : Json(nullptr);
  return out;
}

Json holder_json(const HolderFit& h) {
  Json bins = Json::array();
  for (const auto& b : h.bins) {
    bins.push_back({{"distance", format_double(b.distance)}, {"max_diff", format_double(b.max_diff)}, {"pairs", b.pairs}});
  }
  return Json{{"delta_hat", format_double(h.delta_hat)},
              {"fit_quality", format_double(h.fit_quality)},
              {"flat", h.flat},
              {"bins", bins}};
}

Json solve_json(const SolveRun& run, const CombinatorialData& pi) {
  Json out;
  out["chi"] = letters_json(pi, run.chi.chi);
  out["chi_norm"] = real_str(norm2(run.chi.chi));
  out["series"] = {{"levels", run.chi.levels},
                   {"term_norms", doubles_json(run.chi.term_norms)},
                   {"truncation_level", run.chi.truncation_level},
                   {"tail_estimate", format_double(run.chi.tail_estimate)},
                   {"max_condition", format_double(run.chi.max_condition)}};
  out["stable_space"] = {{"dimension", run.est.basis.size()},
                         {"horizon", run.est.horizon},
                         {"gap_ratio", real_str(run.est.gap_ratio)},
                         {"sigma_hat", format_double(run.est.sigma_hat)}};
  out["characterization"] = {{"levels", run.characterization.levels},
                             {"sup_norms", doubles_json(run.characterization.sup_norms)},
                             {"exponent", format_double(run.characterization.exponent)}};
  out["psi"] = {{"samples", run.psi.samples.size()},
                {"mean_shift", real_str(run.psi.mean_shift)},
                {"residual_sup", real_str(run.psi.residual_sup)},
                {"residual_ok", run.residual_ok}};
  if (run.delta) {
    Json v = Json::array();
    for (const auto& row : run.delta->v) v.push_back(letters_json(pi, row));
    out["delta_table"] = {{"levels", run.delta->levels},
                          {"v", v},
                          {"recursion_residual", doubles_json(run.delta->recursion_residual)}};
  }
  if (run.holder) out["holder"] = holder_json(*run.holder);
  out["warnings"] = run.warnings;
  return out;
}

std::string psi_csv(const PsiSolution& psi) {
  std::string out = "x,psi\n";
  for (const auto& s : psi.samples) {
    out += exact_to_string(s.x, kDisplayDigits, s.psi.precision());
    out += ',';
    out += real_str(s.psi);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<double, double>> parse_psi_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<double, double>> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || (row == 1 && line.rfind("x", 0) == 0)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::MalformedData, "psi CSV row " + std::to_string(row) + " lacks a comma");
    try {
      out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(ErrorKind::MalformedData, "psi CSV row " + std::to_string(row) + " is not numeric");
    }
  }
  return out;
}

}  // namespace iemcoh
