#pragma once

#include <string>

#include "bench.hpp"
#include "pipeline.hpp"

namespace atgm {

// Stage traces, removal bookkeeping, sparsity, and both matchings as JSON.
std::string diagnostics_json(const AtgmResult& result);

// Accepts the documented sweep-request schema; unknown keys are ignored.
SweepRequest sweep_request_from_json(const std::string& text);

std::string sweep_summary_json(const SweepRequest& req, const SweepResults& results);

}  // namespace atgm
