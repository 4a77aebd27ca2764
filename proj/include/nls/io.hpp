#pragma once

#include <json.hpp>

#include <ostream>

#include "nls/estimates.hpp"
#include "nls/evolution.hpp"
#include "nls/homsub.hpp"
#include "nls/resonance.hpp"

namespace nls {

using Json = nlohmann::json;

Json to_json(const RunRecord& rec);
Json to_json(const AprioriReport& rep);
Json to_json(const DifferenceReport& rep);
Json to_json(const ContinuityReport& rep);
Json to_json(const QuadrupleRecord& rec);
Json to_json(const DisjointnessReport& rep);
Json to_json(const PhaseAuditReport& rep);
Json to_json(const ExponentFit& fit);
Json to_json(const SoggeResult& res);
Json to_json(const BilinearResult& res);
Json to_json(const RestrictionResult& res);
Json to_json(const BilinearReport& rep);
Json to_json(const TrilinearReport& rep);
Json to_json(const PicardResult& res);

/// One row per snapshot: t, mass, energy, per-band norms and, when a
/// diagnostics report is supplied, the per-snapshot integrands of J1/J3/J4/J5.
void write_run_csv(std::ostream& os, const RunRecord& rec, const AprioriReport* diag = nullptr);

void write_fit_csv(std::ostream& os, const std::vector<RatioEntry>& table);

}  // namespace nls
