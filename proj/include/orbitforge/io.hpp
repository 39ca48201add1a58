#pragma once

#include <string>

#include <json.hpp>

#include "orbitforge/approx.hpp"
#include "orbitforge/criteria.hpp"
#include "orbitforge/synthesis.hpp"
#include "orbitforge/weights.hpp"

namespace orbitforge {

// Deterministic field order throughout, so canonical round-trips are
// byte-identical.
using json = nlohmann::ordered_json;

json to_json(const GroupPoint& p);
GroupPoint group_point_from_json(const json& j, Space space);

json to_json(const Window& k);
Window window_from_json(const json& j, Space space, AnchorTablePtr anchors);

json to_json(const SupportedVec& f);
SupportedVec vector_from_json(const json& j);

json to_json(const Weight& w);
Weight weight_from_json(const json& j);

json to_json(const GammaSet& g);
GammaSet gamma_from_json(const json& j);
/// Inline forms: "all", "zero_to_one", "one_to_inf", "singleton:2",
/// "annulus:0.5:2", "grid:1,2,4".
GammaSet gamma_from_inline(const std::string& text);

json to_json(const ShiftSet& s);
ShiftSet shifts_from_json(const json& j);
ShiftSet shifts_from_inline(const std::string& text);

json to_json(const CriterionReport& r);
json to_json(const ApproxResult& r);
json to_json(const SynthesisPlan& p);
json to_json(const DenseVectorCandidate& c);
json to_json(const MBound& m);
json to_json(const AdmissibilityReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace orbitforge
