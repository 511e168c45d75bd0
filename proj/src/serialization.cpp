#include "frameopt/serialization.hpp"

#include <stdexcept>
#include <string>

namespace frameopt {

using nlohmann::json;

json frame_to_json(const Frame& f) {
    json vectors = json::array();
    for (int i = 0; i < f.count(); ++i) {
        json row = json::array();
        for (double x : f.vec(i)) row.push_back(x);
        vectors.push_back(std::move(row));
    }
    return json{{"n", f.dim()}, {"m", f.count()}, {"vectors", std::move(vectors)}};
}

Frame frame_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const auto& vectors = j.at("vectors");
    if (!vectors.is_array() || static_cast<int>(vectors.size()) != m)
        throw std::invalid_argument("frame document: expected " + std::to_string(m) +
                                    " vectors, found " + std::to_string(vectors.size()));
    if (n < 1 || m < 1) throw std::invalid_argument("frame document: m and n must be positive");
    Matrix rows(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) {
        const auto& row = vectors.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("frame document: vector " + std::to_string(i + 1) +
                                        " does not have n=" + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k)
            rows(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
                row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return Frame(std::move(rows));
}

json erasure_report_to_json(const ErasureReport& report) {
    json argmax = json::array();
    for (int i : report.argmax.lost) argmax.push_back(i + 1);
    return json{{"r", report.r},
                {"d_p_r", report.d_p_r},
                {"argmax", std::move(argmax)},
                {"cond_expectation", report.cond_expectation},
                {"prob_N_eq_r", report.prob_N_eq_r}};
}

json comparison_to_json(const ComparisonReport& report) {
    return json{{"e_cm", report.e_cm},
                {"e_pm", report.e_pm},
                {"e_rpm", report.e_rpm},
                {"gap_lower_bound", report.gap_lower_bound},
                {"cor_bound", report.cor_bound},
                {"index", report.index},
                {"norms",
                 json{{"cm", report.norms_cm}, {"pm", report.norms_pm}, {"rpm", report.norms_rpm}}},
                {"pm_feasible", report.pm_feasible}};
}

json estimate_to_json(const MonteCarloEstimate& est, std::uint64_t seed) {
    return json{{"estimate", est.estimate},
                {"std_error", est.std_error},
                {"trials", est.trials},
                {"accepted", est.accepted},
                {"seed", seed}};
}

}  // namespace frameopt
