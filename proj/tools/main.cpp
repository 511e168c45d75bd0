// frameopt: design and evaluate Parseval frames for lossy transmission
// channels. Subcommands: design, erasure, compare, simulate, sweep.
//
// Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 statistical
// failure (Monte Carlo conditioning never matched), 1 internal error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frameopt/comparison.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/frame.hpp"
#include "frameopt/probability.hpp"
#include "frameopt/serialization.hpp"

namespace {

using frameopt::ErasureDistribution;
using frameopt::Frame;
using frameopt::Matrix;
using nlohmann::json;

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct ChannelArgs {
    std::vector<double> probs;
    double uniform_p = std::numeric_limits<double>::quiet_NaN();
    int m = 0;
};

ErasureDistribution make_distribution(const ChannelArgs& args) {
    if (!args.probs.empty()) {
        if (!std::isnan(args.uniform_p))
            throw std::invalid_argument("give either --p or --uniform-p, not both");
        return ErasureDistribution(args.probs);
    }
    if (!std::isnan(args.uniform_p)) {
        if (args.m < 2)
            throw std::invalid_argument("--uniform-p requires --m with at least 2 channels");
        return ErasureDistribution(
            std::vector<double>(static_cast<std::size_t>(args.m), args.uniform_p));
    }
    throw std::invalid_argument("no channel probabilities given (use --p or --uniform-p with --m)");
}

Frame permute_rows(const Frame& f, const std::vector<int>& dest_of_row) {
    Matrix out(static_cast<std::size_t>(f.count()), static_cast<std::size_t>(f.dim()));
    for (int k = 0; k < f.count(); ++k) {
        const auto src = f.vec(k);
        auto dst = out.row(static_cast<std::size_t>(dest_of_row[static_cast<std::size_t>(k)]));
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return Frame(std::move(out), f.label());
}

/// Design output and frame files live in the caller's channel order; library
/// math runs in sorted order. These two convert between them.
Frame frame_to_user_order(const Frame& sorted, const ErasureDistribution& dist) {
    return permute_rows(sorted, dist.sorted_to_input());
}

Frame frame_to_sorted_order(const Frame& user, const ErasureDistribution& dist) {
    Matrix out(static_cast<std::size_t>(user.count()), static_cast<std::size_t>(user.dim()));
    for (int k = 0; k < user.count(); ++k) {
        const auto src = user.vec(dist.sorted_to_input()[static_cast<std::size_t>(k)]);
        std::copy(src.begin(), src.end(), out.row(static_cast<std::size_t>(k)).begin());
    }
    return Frame(std::move(out), user.label());
}

std::vector<double> values_to_user_order(const std::vector<double>& sorted_vals,
                                         const ErasureDistribution& dist) {
    std::vector<double> out(sorted_vals.size());
    for (std::size_t k = 0; k < sorted_vals.size(); ++k)
        out[static_cast<std::size_t>(dist.sorted_to_input()[k])] = sorted_vals[k];
    return out;
}

void pattern_to_user_order(frameopt::ErasurePattern& pattern, const ErasureDistribution& dist) {
    for (int& i : pattern.lost) i = dist.sorted_to_input()[static_cast<std::size_t>(i)];
    std::sort(pattern.lost.begin(), pattern.lost.end());
}

Frame load_frame(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open frame file '" + path + "'");
    json doc;
    in >> doc;  // nlohmann parse errors propagate as json exceptions
    return frameopt::frame_from_json(doc);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open output file '" + out_path + "'");
    out << text;
    if (!out) throw IoError("failed writing output file '" + out_path + "'");
}

std::string csv_join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += fmt17(v[i]);
    }
    return s;
}

std::string flat_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string s = "key,value\n";
    for (const auto& [k, v] : rows) s += k + "," + v + "\n";
    return s;
}

struct FrameSource {
    std::string frame_path;
    bool from_design = false;
};

/// Resolves --frame / --from-design to a frame in sorted-channel order.
Frame resolve_frame(const FrameSource& source, const ErasureDistribution& dist, int n) {
    if (source.from_design) {
        if (!source.frame_path.empty())
            throw std::invalid_argument("give either --frame or --from-design, not both");
        const auto design = frameopt::rpm_design(dist, n);
        return frameopt::construct_parseval_with_norms(design.norms_sq, n);
    }
    if (source.frame_path.empty())
        throw std::invalid_argument("no frame given (use --frame or --from-design)");
    Frame user = load_frame(source.frame_path);
    if (user.count() != dist.size())
        throw std::invalid_argument("frame file has m=" + std::to_string(user.count()) +
                                    " vectors but " + std::to_string(dist.size()) +
                                    " probabilities were given");
    return frame_to_sorted_order(user, dist);
}

int run_design(const ChannelArgs& args, int n, double tol, const std::string& format,
               const std::string& out_path) {
    const ErasureDistribution dist = make_distribution(args);
    const auto design = frameopt::rpm_design(dist, n);
    const Frame sorted_frame = frameopt::construct_parseval_with_norms(design.norms_sq, n);

    // The emitted frame must realize the advertised optimum within --tol.
    const auto check = frameopt::erasure_report(sorted_frame, dist, 1);
    if (std::abs(check.d_p_r - design.e_p1) > tol)
        throw std::logic_error("constructed frame misses the optimal value by " +
                               fmt17(check.d_p_r - design.e_p1));

    const Frame user_frame = frame_to_user_order(sorted_frame, dist);
    const auto cert = frameopt::certify_parseval(user_frame);

    json order = json::array();
    for (int i : dist.sorted_to_input()) order.push_back(i + 1);
    const json doc{{"n", n},
                   {"m", dist.size()},
                   {"probs", dist.input_probs()},
                   {"probs_sorted", dist.probs()},
                   {"order", std::move(order)},
                   {"holds_H", design.holds_h},
                   {"index", design.index},
                   {"e_p1", design.e_p1},
                   {"norms_sq", values_to_user_order(design.norms_sq, dist)},
                   {"norms_sq_sorted", design.norms_sq},
                   {"frame", frameopt::frame_to_json(user_frame)},
                   {"parseval",
                    json{{"residual", cert.residual},
                         {"is_parseval", cert.is_parseval},
                         {"norms_sq", cert.norms_sq}}}};
    if (format == "csv") {
        write_output(flat_csv({{"n", std::to_string(n)},
                               {"m", std::to_string(dist.size())},
                               {"holds_H", design.holds_h ? "true" : "false"},
                               {"index", std::to_string(design.index)},
                               {"e_p1", fmt17(design.e_p1)},
                               {"norms_sq", csv_join(values_to_user_order(design.norms_sq, dist))},
                               {"parseval_residual", fmt17(cert.residual)}}),
                     out_path);
    } else {
        write_output(doc.dump(2) + "\n", out_path);
    }
    return 0;
}

int run_erasure(const ChannelArgs& args, const FrameSource& source, int n, int r,
                const std::string& format, const std::string& out_path) {
    const ErasureDistribution dist = make_distribution(args);
    const Frame frame = resolve_frame(source, dist, n);
    auto report = frameopt::erasure_report(frame, dist, r);
    pattern_to_user_order(report.argmax, dist);
    if (format == "csv") {
        std::string argmax;
        for (std::size_t i = 0; i < report.argmax.lost.size(); ++i) {
            if (i) argmax += ';';
            argmax += std::to_string(report.argmax.lost[i] + 1);
        }
        write_output(flat_csv({{"r", std::to_string(report.r)},
                               {"d_p_r", fmt17(report.d_p_r)},
                               {"argmax", argmax},
                               {"cond_expectation", fmt17(report.cond_expectation)},
                               {"prob_N_eq_r", fmt17(report.prob_N_eq_r)}}),
                     out_path);
    } else {
        write_output(frameopt::erasure_report_to_json(report).dump(2) + "\n", out_path);
    }
    return 0;
}

int run_compare(const ChannelArgs& args, int n, const std::string& format,
                const std::string& out_path) {
    const ErasureDistribution dist = make_distribution(args);
    auto report = frameopt::compare_models(dist, n);
    report.norms_cm = values_to_user_order(report.norms_cm, dist);
    report.norms_pm = values_to_user_order(report.norms_pm, dist);
    report.norms_rpm = values_to_user_order(report.norms_rpm, dist);
    if (format == "csv") {
        std::string s = "model,expected_error\n";
        s += "cm," + fmt17(report.e_cm) + "\n";
        s += "pm," + fmt17(report.e_pm) + "\n";
        s += "rpm," + fmt17(report.e_rpm) + "\n";
        write_output(s, out_path);
    } else {
        write_output(frameopt::comparison_to_json(report).dump(2) + "\n", out_path);
    }
    return 0;
}

int run_simulate(const ChannelArgs& args, const FrameSource& source, int n,
                 std::optional<int> condition_on_r, std::uint64_t trials, std::uint64_t seed,
                 const std::string& format, const std::string& out_path) {
    const ErasureDistribution dist = make_distribution(args);
    const Frame frame = resolve_frame(source, dist, n);
    const auto est = frameopt::monte_carlo_error(frame, dist, trials, seed, condition_on_r);
    if (format == "csv") {
        write_output(flat_csv({{"estimate", fmt17(est.estimate)},
                               {"std_error", fmt17(est.std_error)},
                               {"trials", std::to_string(est.trials)},
                               {"accepted", std::to_string(est.accepted)},
                               {"seed", std::to_string(seed)}}),
                     out_path);
    } else {
        write_output(frameopt::estimate_to_json(est, seed).dump(2) + "\n", out_path);
    }
    return 0;
}

int run_sweep(double uniform_p, int n, const std::vector<int>& m_list, const std::string& format,
              const std::string& out_path) {
    if (m_list.empty()) throw std::invalid_argument("sweep needs a nonempty --m-list");
    if (!(uniform_p > 0.0 && uniform_p < 1.0))
        throw std::invalid_argument("--uniform-p must lie in (0,1), got " + fmt17(uniform_p));

    json rows = json::array();
    std::string csv = "m,d_p_2,asymptote,ratio\n";
    for (int m : m_list) {
        if (m < 2 || m < n)
            throw std::invalid_argument("sweep entry m=" + std::to_string(m) +
                                        " must satisfy m >= max(2, n)");
        const ErasureDistribution dist(
            std::vector<double>(static_cast<std::size_t>(m), uniform_p));
        const Frame frame = frameopt::harmonic_frame(m, n);
        const double d2 = frameopt::erasure_report(frame, dist, 2).d_p_r;
        const double asymptote = n * uniform_p * uniform_p / (m * (1.0 - uniform_p));
        const double ratio = d2 / asymptote;
        rows.push_back(json{{"m", m}, {"d_p_2", d2}, {"asymptote", asymptote}, {"ratio", ratio}});
        csv += std::to_string(m) + "," + fmt17(d2) + "," + fmt17(asymptote) + "," + fmt17(ratio) +
               "\n";
    }
    if (format == "csv") {
        write_output(csv, out_path);
    } else {
        write_output(json{{"n", n}, {"p", uniform_p}, {"rows", std::move(rows)}}.dump(2) + "\n",
                     out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parseval frame design and erasure-error evaluation for lossy channels"};
    app.require_subcommand(1);

    ChannelArgs channel_args;
    FrameSource source;
    int n = 0;
    int r = 1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::string format = "json";
    std::string out_path;
    std::vector<int> m_list;

    auto add_dist_options = [&channel_args](CLI::App* cmd) {
        cmd->add_option("--p", channel_args.probs,
                        "per-channel loss probabilities, comma separated")
            ->delimiter(',');
        cmd->add_option("--uniform-p", channel_args.uniform_p,
                        "uniform loss probability for all channels");
        cmd->add_option("--m", channel_args.m, "channel count used with --uniform-p");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", out_path, "write the document to this path instead of stdout");
    };
    auto add_frame_source = [&](CLI::App* cmd) {
        cmd->add_option("--frame", source.frame_path, "frame JSON file (rows in --p channel order)");
        cmd->add_flag("--from-design", source.from_design,
                      "use the optimal designed frame for the given channels");
    };

    CLI::App* design = app.add_subcommand("design", "optimal norm profile and a frame realizing it");
    design->add_option("--n", n, "ambient dimension")->required();
    add_dist_options(design);
    design->add_option("--tol", tol, "verification tolerance for the emitted frame");
    add_common(design);

    CLI::App* erasure = app.add_subcommand("erasure", "exact worst-case r-erasure report");
    erasure->add_option("--n", n, "ambient dimension (needed with --from-design)");
    erasure->add_option("--r", r, "erasure order")->required();
    add_dist_options(erasure);
    add_frame_source(erasure);
    add_common(erasure);

    CLI::App* compare = app.add_subcommand("compare", "expected one-erasure error of CM, PM, RPM");
    compare->add_option("--n", n, "ambient dimension")->required();
    add_dist_options(compare);
    add_common(compare);

    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo reconstruction error");
    simulate->add_option("--n", n, "ambient dimension (needed with --from-design)");
    simulate->add_option("--r", r, "condition on exactly r losses");
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--seed", seed, "RNG seed")->envname("FRAMEOPT_SEED");
    add_dist_options(simulate);
    add_frame_source(simulate);
    add_common(simulate);

    CLI::App* sweep = app.add_subcommand("sweep", "two-erasure risk of harmonic frames over m");
    sweep->add_option("--n", n, "ambient dimension")->required();
    sweep->add_option("--uniform-p", channel_args.uniform_p, "uniform loss probability")->required();
    sweep->add_option("--m-list", m_list, "channel counts, comma separated")->delimiter(',');
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(design)) return run_design(channel_args, n, tol, format, out_path);
        if (app.got_subcommand(erasure)) return run_erasure(channel_args, source, n, r, format, out_path);
        if (app.got_subcommand(compare)) return run_compare(channel_args, n, format, out_path);
        if (app.got_subcommand(simulate)) {
            std::optional<int> cond;
            if (simulate->count("--r") > 0) cond = r;
            return run_simulate(channel_args, source, n, cond, trials, seed, format, out_path);
        }
        if (app.got_subcommand(sweep)) return run_sweep(channel_args.uniform_p, n, m_list, format, out_path);
        return 2;
    } catch (const frameopt::StatisticalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed document: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
