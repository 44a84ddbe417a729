#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "czhardy/hardy.hpp"
#include "czhardy/interpolation.hpp"
#include "czhardy/maximal.hpp"
#include "czhardy/operators.hpp"

namespace czhardy {

using Json = nlohmann::ordered_json;

// Exact rationals travel as "num/den" strings ("num" when integral); floats
// as shortest round-trip decimals.  Reports never embed timestamps, so equal
// inputs give byte-identical files.
std::string fraction(const Rational& r);
std::string format_double(double x);

Json trapezoid_json(const TreeTruncation& tree, const AdmissibleTrapezoid& R);
Json czset_json(const TreeTruncation& tree, const CZSet& S);
Json function_json(const TreeTruncation& tree, const TreeFunction& f);  // sparse

Json covering_json(const TreeTruncation& tree, const CoveringResult& cov);
Json decomposition_json(const TreeTruncation& tree, const AtomicDecomposition& dec);
Json interpolation_json(const InterpolationReport& rep);
Json sweep_json(const TreeTruncation& tree, const HormanderSweep& sweep);

std::string json_text(const Json& j);
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);
void write_file(const std::string& path, const std::string& content);

}  // namespace czhardy
