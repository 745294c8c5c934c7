#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "cdlevel/brown.hpp"
#include "cdlevel/level.hpp"
#include "cdlevel/quadform.hpp"

namespace cdlevel {

// nlohmann::json objects are map-backed, so dumped keys come out sorted;
// together with canonical element printing this keeps output byte-stable.
using Json = nlohmann::json;

Json budget_json(const SearchBudget& b);
SearchBudget budget_from_json(const Json& j);

Json algebra_json(const AlgebraPtr& desc);

/// {"field": <descriptor>, "coeffs": [<expr>, ...]}
Json form_json(const DiagonalForm& f);
DiagonalForm form_from_json(const Json& j);
std::string form_text(const DiagonalForm& f);

Json element_json(const AlgebraElement& x);
Json witness_json(const std::vector<AlgebraElement>& ws);

Json table_json(const AlgebraPtr& desc);
std::string table_text(const AlgebraPtr& desc);

Json isotropy_json(const DiagonalForm& f, const IsotropyResult& r);
Json level_json(const LevelValue& v);
Json report_json(const PropositionReport& report);
Json zero_divisor_json(const ZeroDivisorReport& report);
Json parity_json(const AlgebraPtr& lower_ext, const ParityCertificate& cert);
Json prescribed_json(const PrescribedLevel& p);

}  // namespace cdlevel
