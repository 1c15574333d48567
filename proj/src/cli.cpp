#include "tline/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "tline/errors.hpp"

namespace tline {

std::optional<Command> parse_command(std::string_view name) {
    if (name == "validate") return Command::Validate;
    if (name == "simulate") return Command::Simulate;
    if (name == "train") return Command::Train;
    if (name == "sweep") return Command::Sweep;
    return std::nullopt;
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::Validate: return "validate";
        case Command::Simulate: return "simulate";
        case Command::Train: return "train";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

namespace {

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text) { out_ << "# " << text << '\n'; }

    void metadata(Command command, const RunConfig& config) {
        comment("tline " + std::string(command_name(command)));
        comment("--- config ---");
        std::istringstream lines(format_config(config));
        for (std::string line; std::getline(lines, line);) comment(line);
        comment("--- end config ---");
    }

    void header(std::initializer_list<std::string_view> names) {
        std::vector<std::string> v(names.begin(), names.end());
        header(v);
    }

    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
        out_ << '\n';
    }

    /// Empty optional cells are written as empty fields.
    void row(const std::vector<std::optional<double>>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            if (cells[i]) out_ << format_number(*cells[i]);
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

using Cells = std::vector<std::optional<double>>;

BoundaryCondition receiver_boundary(const RunConfig& config, Complex v0) {
    return {v0, config.load, config.omega(), config.phi};
}

LineProfile ladder_profile(const RunConfig& config, int n, const DamageCase& damage) {
    const NetworkSpec spec = config.network(n);
    const auto responses = frequency_response(spec, damage);
    return node_phasors(responses, spec, config.ladder_anchor());
}

// Node position as the reduced fraction (n - g) / n of the line length, so
// nodes shared by several discretizations land on the same row.
struct Fraction {
    long num;
    long den;
    bool operator<(const Fraction& o) const { return num * o.den > o.num * den; }  // descending x
};

Fraction node_fraction(int n, int g) {
    const long d = std::gcd(static_cast<long>(n - g), static_cast<long>(n));
    return {(n - g) / d, n / d};
}

int run_validate(const RunConfig& config, std::ostream& out) {
    if (config.anchor.kind != AnchorKind::Receiver)
        throw InvalidInput("validate compares against the closed-form solution and needs a receiver anchor");
    const Complex v0 = std::get<ReceiverVoltage>(config.ladder_anchor()).v_out;
    const auto& ns = config.validate_generations;

    struct Row {
        std::vector<const NodePhasor*> ladder;
    };
    std::vector<LineProfile> profiles;
    profiles.reserve(ns.size());
    for (int n : ns) profiles.push_back(ladder_profile(config, n, DamageCase{}));

    std::map<Fraction, Row> rows;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        for (const NodePhasor& p : profiles[k].nodes) {
            Row& r = rows[node_fraction(ns[k], p.node)];
            r.ladder.resize(ns.size(), nullptr);
            r.ladder[k] = &p;
        }
    }

    std::vector<double> xs;
    for (const auto& [f, row] : rows) xs.push_back(config.length * static_cast<double>(f.num) / f.den);
    const auto analytic = analytic_profile(config.line, receiver_boundary(config, v0), xs);

    CsvWriter csv(out);
    csv.metadata(Command::Validate, config);
    for (int n : ns) {
        const ConvergenceError e = convergence_error(config, n);
        csv.comment("E(" + std::to_string(n) + ") vmax=" + format_number(e.vmax) +
                    " imax=" + format_number(e.imax));
    }
    std::vector<std::string> names{"x", "Vmax_analytic", "Imax_analytic"};
    for (int n : ns) {
        names.push_back("Vmax_ladder_" + std::to_string(n));
        names.push_back("Imax_ladder_" + std::to_string(n));
    }
    csv.header(names);

    std::size_t i = 0;
    for (const auto& [f, row] : rows) {
        Cells cells{xs[i], std::abs(analytic[i].V), std::abs(analytic[i].I)};
        for (const NodePhasor* p : row.ladder) {
            cells.push_back(p ? std::optional(p->v_max) : std::nullopt);
            cells.push_back(p ? std::optional(p->i_max) : std::nullopt);
        }
        csv.row(cells);
        ++i;
    }
    return exit_code::ok;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
    const LineProfile profile = ladder_profile(config, config.generations, config.damage_case());
    CsvWriter csv(out);
    csv.metadata(Command::Simulate, config);
    csv.header({"node", "x", "Re_V", "Im_V", "Vmax", "Re_I", "Im_I", "Imax"});
    for (const NodePhasor& p : profile.nodes)
        csv.row({p.node, p.x, p.V.real(), p.V.imag(), p.v_max, p.I.real(), p.I.imag(), p.i_max});
    return exit_code::ok;
}

int run_train(const RunConfig& config, std::ostream& out) {
    const NetworkSpec spec = config.network();
    const auto timeline = train_timeline(spec, config.train);
    const Anchor anchor = config.ladder_anchor();
    CsvWriter csv(out);
    csv.metadata(Command::Train, config);
    csv.header({"t", "receiver_Imax"});
    for (const TimelineEntry& step : timeline) {
        const auto responses = frequency_response(spec, step.damage);
        const Complex v_out = anchored_output_voltage(responses, anchor);
        csv.row({step.t, std::abs(v_out / spec.z_out)});
    }
    return exit_code::ok;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
    const DamageCase damage = config.damage_case();
    const auto& sw = config.sweep;
    CsvWriter csv(out);
    csv.metadata(Command::Sweep, config);
    csv.header({"frequency", "Re_Z", "Im_Z", "abs_Z", "Re_H", "Im_H", "abs_H"});
    for (int k = 0; k < sw.points; ++k) {
        const double frac = sw.points == 1 ? 0.0 : static_cast<double>(k) / (sw.points - 1);
        const double f = sw.scale == SweepScale::Log
                             ? sw.f_start * std::pow(sw.f_stop / sw.f_start, frac)
                             : sw.f_start + (sw.f_stop - sw.f_start) * frac;
        RunConfig at = config;
        at.frequency = f;
        const auto responses = frequency_response(at.network(), damage);
        const NodeResponse& r = responses.front();
        csv.row({f, r.Z.real(), r.Z.imag(), std::abs(r.Z), r.H.real(), r.H.imag(), std::abs(r.H)});
    }
    return exit_code::ok;
}

}  // namespace

ConvergenceError convergence_error(const RunConfig& config, int n) {
    if (config.anchor.kind != AnchorKind::Receiver)
        throw InvalidInput("convergence error is defined for a receiver anchor");
    const LineProfile profile = ladder_profile(config, n, DamageCase{});
    std::vector<double> xs;
    for (const auto& p : profile.nodes) xs.push_back(p.x);
    const Complex v0 = std::get<ReceiverVoltage>(config.ladder_anchor()).v_out;
    const auto analytic = analytic_profile(config.line, receiver_boundary(config, v0), xs);

    ConvergenceError e{n, 0.0, 0.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double va = std::abs(analytic[i].V);
        const double ia = std::abs(analytic[i].I);
        e.vmax = std::max(e.vmax, std::abs(profile.nodes[i].v_max - va) / va);
        e.imax = std::max(e.imax, std::abs(profile.nodes[i].i_max - ia) / ia);
    }
    return e;
}

int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err) {
    int status = exit_code::ok;
    try {
        switch (command) {
            case Command::Validate: status = run_validate(config, out); break;
            case Command::Simulate: status = run_simulate(config, out); break;
            case Command::Train: status = run_train(config, out); break;
            case Command::Sweep: status = run_sweep(config, out); break;
        }
    } catch (const SingularNetwork& e) {
        err << "error: singular network at generation " << e.generation() << ": " << e.what() << '\n';
        return exit_code::singular;
    } catch (const SingularGain& e) {
        err << "error: singular gain at node " << e.node() << ": " << e.what() << '\n';
        return exit_code::singular;
    } catch (const SingularConfiguration& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::singular;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const UnsupportedConfiguration& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    }
    out.flush();
    if (!out) {
        err << "error: failed writing output\n";
        return exit_code::io;
    }
    return status;
}

}  // namespace tline
