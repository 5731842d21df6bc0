#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 2 argument error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "densecode/densecode.hpp"

namespace densecode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitNumerical = 3;

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> columns{"chi", "S_B", "S_AB", "steerable", "dense_codeable"};
    return columns;
}

struct SweepSpec {
    StateFamily family;
    double p_min = 0.0;
    double p_max = 1.0;
    int steps = 101;
    std::vector<std::string> outputs = sweep_columns();

    void validate() const {
        if (!(p_min >= 0.0 && p_max <= 1.0 && p_min < p_max)) {
            throw invalid_argument("sweep needs 0 <= p_min < p_max <= 1");
        }
        if (steps < 2 || steps > 100000) throw invalid_argument("sweep steps must be in [2, 100000]");
        for (const std::string& col : outputs) {
            bool known = false;
            for (const std::string& c : sweep_columns()) known = known || c == col;
            if (!known) throw invalid_argument("unknown sweep output '" + col + "'");
        }
    }

    double point(int i) const {
        if (i == steps - 1) return p_max;
        return p_min + (p_max - p_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct SweepRow {
    double p = 0.0;
    CapacityReport capacity;
    bool steerable = false;
};

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double p = spec.point(i);
        rows.push_back({p, dense_coding_capacity(spec.family, p), is_steerable(spec.family, p).steerable});
    }
    return rows;
}

/// 9 significant digits, as in printf("%.9g").
inline std::string format_g9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    os << "p";
    for (const std::string& col : spec.outputs) os << ',' << col;
    os << '\n';
    for (const SweepRow& row : rows) {
        os << format_g9(row.p);
        for (const std::string& col : spec.outputs) {
            os << ',';
            if (col == "chi") os << format_g9(row.capacity.chi);
            else if (col == "S_B") os << format_g9(row.capacity.S_B);
            else if (col == "S_AB") os << format_g9(row.capacity.S_AB);
            else if (col == "steerable") os << (row.steerable ? 1 : 0);
            else if (col == "dense_codeable") os << (row.capacity.dense_codeable ? 1 : 0);
        }
        os << '\n';
    }
}

inline nlohmann::json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        nlohmann::json obj{{"p", row.p}};
        for (const std::string& col : spec.outputs) {
            if (col == "chi") obj[col] = row.capacity.chi;
            else if (col == "S_B") obj[col] = row.capacity.S_B;
            else if (col == "S_AB") obj[col] = row.capacity.S_AB;
            else if (col == "steerable") obj[col] = row.steerable;
            else if (col == "dense_codeable") obj[col] = row.capacity.dense_codeable;
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline nlohmann::json to_json(const StateFamily& family, const CapacityReport& r) {
    return {{"family", family.name()}, {"d", family.d},        {"p", r.p},
            {"chi", r.chi},            {"S_B", r.S_B},         {"S_AB", r.S_AB},
            {"log2_dA", r.log2_dA},    {"dense_codeable", r.dense_codeable}};
}

inline nlohmann::json to_json(const ProtocolOutcome& o) {
    nlohmann::json j{{"per_message_success", o.per_message_success},
                     {"success_probability", o.success_probability}};
    if (o.shared_state_after_control) {
        j["shared_state_concurrence"] = concurrence(*o.shared_state_after_control);
        nlohmann::json re = nlohmann::json::array();
        nlohmann::json im = nlohmann::json::array();
        for (const Complex& z : o.shared_state_after_control->matrix().entries()) {
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        j["shared_state_after_control_re"] = std::move(re);
        j["shared_state_after_control_im"] = std::move(im);
    } else {
        j["shared_state_concurrence"] = nullptr;
    }
    return j;
}

inline StateFamily family_from_flags(const std::string& name, int d, bool d_given) {
    if (name == "werner" && d_given && d != 2) throw invalid_argument("werner family is fixed at d = 2");
    if (d < 0) throw invalid_argument("d must be positive");
    return StateFamily::parse(name, static_cast<std::size_t>(d));
}

/// Runs one command line; output goes to out, diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dense coding capacity, steering thresholds and protocol simulation"};
    app.require_subcommand(1);

    std::string family = "werner";
    int d = 2;
    double p = 0.0;
    double theta = 0.0;
    double tol = 1e-6;
    SweepSpec sweep;
    std::string out_path;
    std::string format = "csv";
    std::string protocol;
    std::vector<std::string> outputs;

    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", family, "State family")->check(CLI::IsMember({"werner", "isotropic"}));
        return sub->add_option("--d", d, "Local dimension (isotropic only)");
    };

    CLI::App* capacity = app.add_subcommand("capacity", "Dense-coding capacity of one state");
    CLI::Option* capacity_d = add_family(capacity);
    capacity->add_option("--p", p, "State parameter in [0, 1]")->required();

    CLI::App* threshold = app.add_subcommand("threshold", "Dense-coding and steering thresholds");
    CLI::Option* threshold_d = add_family(threshold);
    threshold->add_option("--tol", tol, "Bisection bracket width")->capture_default_str();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate a family over a grid of p");
    CLI::Option* sweep_d = add_family(sweep_cmd);
    sweep_cmd->add_option("--p-min", sweep.p_min)->capture_default_str();
    sweep_cmd->add_option("--p-max", sweep.p_max)->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "Grid points, endpoints included")->capture_default_str();
    sweep_cmd->add_option("--outputs", outputs, "Columns to emit")->delimiter(',');
    sweep_cmd->add_option("--out", out_path, "Output file")->required();
    sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    CLI::App* protocol_cmd = app.add_subcommand("protocol", "Simulate a dense-coding protocol");
    protocol_cmd->add_option("--protocol", protocol)->required();
    CLI::Option* protocol_d = add_family(protocol_cmd);
    protocol_cmd->add_option("--p", p, "Channel parameter (superdense)");
    protocol_cmd->add_option("--theta", theta, "Cliff's basis angle (controlled)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitArgument;
    }

    try {
        if (capacity->parsed()) {
            const StateFamily fam = family_from_flags(family, d, capacity_d->count() > 0);
            out << to_json(fam, dense_coding_capacity(fam, p)).dump() << '\n';
        } else if (threshold->parsed()) {
            const StateFamily fam = family_from_flags(family, d, threshold_d->count() > 0);
            const ThresholdResult dense = find_dense_coding_threshold(fam, tol);
            const ThresholdResult steer = steering_boundary(fam);
            const nlohmann::json j{
                {"family", fam.name()},
                {"d", fam.d},
                {"kind", to_string(dense.kind)},
                {"p_star", dense.p_star},
                {"tolerance", dense.tolerance},
                {"iterations", dense.iterations},
                {"steerability_threshold", steer.p_star},
                {"steer_rule", to_string(is_steerable(fam, 1.0).rule)},
                {"gap", dense.p_star - steer.p_star},
            };
            out << j.dump() << '\n';
        } else if (sweep_cmd->parsed()) {
            sweep.family = family_from_flags(family, d, sweep_d->count() > 0);
            if (!outputs.empty()) sweep.outputs = outputs;
            const std::vector<SweepRow> rows = run_sweep(sweep);
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open '" << out_path << "' for writing\n";
                return kExitArgument;
            }
            if (format == "csv") {
                write_sweep_csv(file, sweep, rows);
            } else {
                file << sweep_json(sweep, rows).dump(1) << '\n';
            }
            if (!file.flush()) {
                err << "error: failed writing '" << out_path << "'\n";
                return kExitArgument;
            }
        } else if (protocol_cmd->parsed()) {
            if (protocol == "superdense") {
                const StateFamily fam = family_from_flags(family, d, protocol_d->count() > 0);
                if (fam.d != 2) throw invalid_argument("superdense coding needs a two-qubit family");
                // Each family's pure component fixes the decoding table.
                const Bell reference = fam.kind == FamilyKind::Werner ? Bell::PsiMinus : Bell::PhiPlus;
                out << to_json(superdense_run(fam(p), reference)).dump() << '\n';
            } else if (protocol == "controlled") {
                out << to_json(controlled_dense_coding_run(ControlBasis(theta))).dump() << '\n';
            } else {
                throw invalid_argument("unknown protocol '" + protocol + "' (superdense|controlled)");
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidArgument ? kExitArgument : kExitNumerical;
    }
    return kExitOk;
}

}  // namespace densecode::cli
