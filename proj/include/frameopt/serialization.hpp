#pragma once

#include <json.hpp>

#include "frameopt/comparison.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/frame.hpp"

namespace frameopt {

/// { "n": int, "m": int, "vectors": [[real, ...], ...] }, row-major.
nlohmann::json frame_to_json(const Frame& f);

/// Parses the schema above. Shape or type problems raise nlohmann exceptions;
/// semantic problems (m < n, non-spanning rows) raise std::invalid_argument.
Frame frame_from_json(const nlohmann::json& j);

/// { "r", "d_p_r", "argmax", "cond_expectation", "prob_N_eq_r" } with 1-based
/// channel indices in argmax, exactly as held by the report.
nlohmann::json erasure_report_to_json(const ErasureReport& report);

/// { "e_cm", "e_pm", "e_rpm", "gap_lower_bound", "cor_bound", "index",
///   "norms": {"cm", "pm", "rpm"}, "pm_feasible" }.
nlohmann::json comparison_to_json(const ComparisonReport& report);

nlohmann::json estimate_to_json(const MonteCarloEstimate& est, std::uint64_t seed);

}  // namespace frameopt
