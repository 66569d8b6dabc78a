#pragma once

#include <optional>
#include <string>

#include "decompositions.hpp"
#include "json.hpp"
#include "pipeline.hpp"

namespace iemcoh {

using Json = nlohmann::ordered_json;

// Significant digits for human-facing decimals.
inline constexpr int kDisplayDigits = 20;

std::string format_double(double x);

CombinatorialData combinatorics_from_json(const Json& j);
// precision_bits in the document is used unless `precision` is given.
Iem iem_from_json(const Json& j, std::optional<Precision> precision = std::nullopt);
// Either {"level":n,"pieces":{"A":["c0",...]}} in local coordinates, or
// {"coboundary":["c0",...]} / {"polynomial":["c0",...]} for psi0∘T - psi0 and
// a global polynomial, coefficients in x.
Observable observable_from_json(const Json& j, const Iem& t);

Json describe_json(const CombinatorialData& pi);
Json path_json(const RenormalizationPath& path);
Json roth_json(const RothReport& r);
Json time_json(const TimeDecomposition& td);
Json space_json(const SpaceDecomposition& sd);
Json holder_json(const HolderFit& h);
Json solve_json(const SolveRun& run, const CombinatorialData& pi);
// "x,psi" rows sorted by x.
std::string psi_csv(const PsiSolution& psi);
std::vector<std::pair<double, double>> parse_psi_csv(const std::string& text);

}  // namespace iemcoh
