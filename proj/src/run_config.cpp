#include "tline/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "tline/errors.hpp"

namespace tline {

ConfigError::ConfigError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

double RunConfig::omega() const { return 2.0 * std::numbers::pi * frequency; }

NetworkSpec RunConfig::network(int n) const {
    return make_network(line, length, n, load, omega());
}

NetworkSpec RunConfig::network() const { return network(generations); }

Anchor RunConfig::ladder_anchor() const {
    if (anchor.kind == AnchorKind::Transmitter) return TransmitterVoltageMagnitude{anchor.magnitude};
    return ReceiverVoltage{std::polar(anchor.magnitude, anchor.phase_deg * std::numbers::pi / 180.0)};
}

DamageCase RunConfig::damage_case() const {
    std::vector<DamageEntry> entries = damage;
    if (ballast) {
        const DamageCase b = ballast_damage(*ballast);
        entries.insert(entries.end(), b.entries().begin(), b.entries().end());
    }
    return DamageCase(std::move(entries));
}

namespace {

struct Value {
    std::string_view text;
    int line = 0;
    int column = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError(message, line, column);
    }
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const Value& v, std::string_view text) {
    double out = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        v.fail("expected a number, got '" + std::string(text) + "'");
    return out;
}

double parse_double(const Value& v) { return parse_double(v, v.text); }

int parse_int(const Value& v, std::string_view text) {
    int out = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end) v.fail("expected an integer, got '" + std::string(text) + "'");
    return out;
}

int parse_int(const Value& v) { return parse_int(v, v.text); }

std::vector<std::string_view> split_list(const Value& v) {
    std::vector<std::string_view> parts;
    std::string_view rest = v.text;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (item.empty()) v.fail("empty item in list '" + std::string(v.text) + "'");
        parts.push_back(item);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return parts;
}

std::vector<double> parse_double_list(const Value& v) {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(parse_double(v, item));
    return out;
}

std::vector<int> parse_int_list(const Value& v) {
    std::vector<int> out;
    for (auto item : split_list(v)) out.push_back(parse_int(v, item));
    return out;
}

double positive(const Value& v) {
    const double x = parse_double(v);
    if (!(x > 0.0)) v.fail("value must be positive");
    return x;
}

double non_negative(const Value& v) {
    const double x = parse_double(v);
    if (x < 0.0) v.fail("value must be non-negative");
    return x;
}

DamageEntry parse_damage_entry(const Value& v) {
    // "<kind>_<generation> <amount>", e.g. "rb_18 0.1"
    const auto space = v.text.find_first_of(" \t");
    if (space == std::string_view::npos) v.fail("damage entry needs '<component> <amount>'");
    const std::string_view id = v.text.substr(0, space);
    const std::string_view amount = trim(v.text.substr(space));
    const auto underscore = id.rfind('_');
    if (underscore == std::string_view::npos)
        v.fail("component '" + std::string(id) + "' is not of the form <kind>_<generation>");
    const auto kind = parse_kind(id.substr(0, underscore));
    if (!kind) v.fail("unknown component kind '" + std::string(id.substr(0, underscore)) + "'");
    const int generation = parse_int(v, id.substr(underscore + 1));
    if (generation < 1) v.fail("generation index must be >= 1");
    const double a = parse_double(v, amount);
    if (!(a > 0.0)) v.fail("damage amount must be positive");
    return {{generation, *kind}, a};
}

struct BallastKeys {
    std::optional<Value> span, rb_min, c_max, rb_factors, c_factors;
    bool any() const { return span || rb_min || c_max || rb_factors || c_factors; }
};

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    BallastKeys ballast;
    std::set<std::string> seen;
    std::vector<Value> damage_values;

    using Handler = std::function<void(const Value&)>;
    const std::map<std::string, Handler, std::less<>> handlers{
        {"line.R", [&](const Value& v) { cfg.line.R = non_negative(v); }},
        {"line.L", [&](const Value& v) { cfg.line.L = non_negative(v); }},
        {"line.G", [&](const Value& v) { cfg.line.G = non_negative(v); }},
        {"line.C", [&](const Value& v) { cfg.line.C = non_negative(v); }},
        {"line.length", [&](const Value& v) { cfg.length = positive(v); }},
        {"line.generations",
         [&](const Value& v) {
             cfg.generations = parse_int(v);
             if (cfg.generations < 1) v.fail("generation count must be >= 1");
         }},
        {"line.frequency", [&](const Value& v) { cfg.frequency = positive(v); }},
        {"load.real", [&](const Value& v) { cfg.load.real(parse_double(v)); }},
        {"load.imag", [&](const Value& v) { cfg.load.imag(parse_double(v)); }},
        {"anchor.kind",
         [&](const Value& v) {
             if (v.text == "receiver")
                 cfg.anchor.kind = AnchorKind::Receiver;
             else if (v.text == "transmitter")
                 cfg.anchor.kind = AnchorKind::Transmitter;
             else
                 v.fail("anchor.kind must be 'receiver' or 'transmitter'");
         }},
        {"anchor.magnitude", [&](const Value& v) { cfg.anchor.magnitude = non_negative(v); }},
        {"anchor.phase_deg", [&](const Value& v) { cfg.anchor.phase_deg = parse_double(v); }},
        {"signal.phi", [&](const Value& v) { cfg.phi = parse_double(v); }},
        {"validate.generations",
         [&](const Value& v) {
             cfg.validate_generations = parse_int_list(v);
             for (int n : cfg.validate_generations)
                 if (n < 1) v.fail("generation counts must be >= 1");
         }},
        {"damage.entry", [&](const Value& v) { damage_values.push_back(v); }},
        {"ballast.span", [&](const Value& v) { ballast.span = v; }},
        {"ballast.rb_min", [&](const Value& v) { ballast.rb_min = v; }},
        {"ballast.c_max", [&](const Value& v) { ballast.c_max = v; }},
        {"ballast.rb_factors", [&](const Value& v) { ballast.rb_factors = v; }},
        {"ballast.c_factors", [&](const Value& v) { ballast.c_factors = v; }},
        {"train.wheelbases",
         [&](const Value& v) {
             cfg.train.wheelbase_count = parse_int(v);
             if (cfg.train.wheelbase_count < 1) v.fail("train needs at least one wheelbase");
         }},
        {"train.spacing", [&](const Value& v) { cfg.train.wheelbase_spacing = positive(v); }},
        {"train.wheel_resistance", [&](const Value& v) { cfg.train.wheel_resistance = positive(v); }},
        {"train.speed", [&](const Value& v) { cfg.train.speed = positive(v); }},
        {"train.entry",
         [&](const Value& v) {
             if (v.text == "receiver")
                 cfg.train.entry = EntryEnd::Receiver;
             else if (v.text == "transmitter")
                 cfg.train.entry = EntryEnd::Transmitter;
             else
                 v.fail("train.entry must be 'receiver' or 'transmitter'");
         }},
        {"sweep.f_start", [&](const Value& v) { cfg.sweep.f_start = positive(v); }},
        {"sweep.f_stop", [&](const Value& v) { cfg.sweep.f_stop = positive(v); }},
        {"sweep.points",
         [&](const Value& v) {
             cfg.sweep.points = parse_int(v);
             if (cfg.sweep.points < 1) v.fail("sweep needs at least one point");
         }},
        {"sweep.scale",
         [&](const Value& v) {
             if (v.text == "log")
                 cfg.sweep.scale = SweepScale::Log;
             else if (v.text == "linear")
                 cfg.sweep.scale = SweepScale::Linear;
             else
                 v.fail("sweep.scale must be 'log' or 'linear'");
         }},
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (trim(raw).empty()) continue;

        const auto eq = raw.find('=');
        const int key_col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no, key_col);
        const std::string_view key = trim(raw.substr(0, eq));
        const std::string_view value_part = raw.substr(eq + 1);
        const std::string_view value = trim(value_part);
        const auto value_offset = value_part.find_first_not_of(" \t");
        const int value_col = static_cast<int>(eq + 1 +
                                               (value_offset == std::string_view::npos ? 0 : value_offset)) + 1;
        if (key.empty()) throw ConfigError("missing key before '='", line_no, key_col);
        if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no, value_col);

        const auto it = handlers.find(key);
        if (it == handlers.end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no, key_col);
        if (key != "damage.entry" && !seen.insert(std::string(key)).second)
            throw ConfigError("duplicate key '" + std::string(key) + "'", line_no, key_col);
        seen.insert(std::string(key));
        it->second(Value{value, line_no, value_col});
    }

    for (const char* required : {"line.R", "line.L", "line.G", "line.C", "line.length",
                                 "line.generations", "line.frequency", "load.real"})
        if (!seen.count(required)) throw ConfigError(std::string("missing required key '") + required + "'");

    try {
        cfg.line.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (cfg.load == Complex(0.0, 0.0)) throw ConfigError("load impedance must be nonzero");
    if (cfg.sweep.f_stop < cfg.sweep.f_start) throw ConfigError("sweep.f_stop is below sweep.f_start");

    for (const Value& v : damage_values) {
        DamageEntry e = parse_damage_entry(v);
        if (e.component.generation > cfg.generations)
            v.fail("component " + to_string(e.component) + " is beyond generation " +
                   std::to_string(cfg.generations));
        cfg.damage.push_back(e);
    }

    if (ballast.any()) {
        if (!ballast.span) throw ConfigError("ballast block needs ballast.span");
        const auto span = parse_int_list(*ballast.span);
        if (span.size() != 2) ballast.span->fail("ballast.span needs two generation indices");
        const bool lists = ballast.rb_factors || ballast.c_factors;
        const bool shape = ballast.rb_min || ballast.c_max;
        if (lists && shape)
            throw ConfigError("ballast: give either rb_factors/c_factors or rb_min/c_max, not both");
        try {
            if (lists) {
                if (!ballast.rb_factors || !ballast.c_factors)
                    throw ConfigError("ballast needs both rb_factors and c_factors");
                BallastProfile p{span[0], span[1], parse_double_list(*ballast.rb_factors),
                                 parse_double_list(*ballast.c_factors)};
                p.validate(cfg.generations);
                cfg.ballast = std::move(p);
            } else {
                if (!ballast.rb_min || !ballast.c_max)
                    throw ConfigError("ballast needs both rb_min and c_max (or explicit factor lists)");
                cfg.ballast = default_ballast_profile(span[0], span[1], positive(*ballast.rb_min),
                                                      positive(*ballast.c_max));
                cfg.ballast->validate(cfg.generations);
            }
        } catch (const InvalidInput& e) {
            ballast.span->fail(e.what());
        }
    }

    try {
        (void)cfg.damage_case();
        (void)cfg.network();
        cfg.train.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::string format_config(const RunConfig& c) {
    std::ostringstream out;
    auto kv = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
    auto num = [&](const char* key, double value) { kv(key, format_number(value)); };
    auto list = [](const auto& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ",";
            if constexpr (std::is_same_v<std::decay_t<decltype(values[i])>, int>)
                s += std::to_string(values[i]);
            else
                s += format_number(values[i]);
        }
        return s;
    };

    num("line.R", c.line.R);
    num("line.L", c.line.L);
    num("line.G", c.line.G);
    num("line.C", c.line.C);
    num("line.length", c.length);
    kv("line.generations", std::to_string(c.generations));
    num("line.frequency", c.frequency);
    num("load.real", c.load.real());
    num("load.imag", c.load.imag());
    kv("anchor.kind", c.anchor.kind == AnchorKind::Receiver ? "receiver" : "transmitter");
    num("anchor.magnitude", c.anchor.magnitude);
    num("anchor.phase_deg", c.anchor.phase_deg);
    num("signal.phi", c.phi);
    kv("validate.generations", list(c.validate_generations));
    for (const auto& e : c.damage) kv("damage.entry", to_string(e.component) + " " + format_number(e.amount));
    if (c.ballast) {
        kv("ballast.span", std::to_string(c.ballast->g_lo) + "," + std::to_string(c.ballast->g_hi));
        kv("ballast.rb_factors", list(c.ballast->rb_factors));
        kv("ballast.c_factors", list(c.ballast->c_factors));
    }
    kv("train.wheelbases", std::to_string(c.train.wheelbase_count));
    num("train.spacing", c.train.wheelbase_spacing);
    num("train.wheel_resistance", c.train.wheel_resistance);
    num("train.speed", c.train.speed);
    kv("train.entry", c.train.entry == EntryEnd::Receiver ? "receiver" : "transmitter");
    num("sweep.f_start", c.sweep.f_start);
    num("sweep.f_stop", c.sweep.f_stop);
    kv("sweep.points", std::to_string(c.sweep.points));
    kv("sweep.scale", c.sweep.scale == SweepScale::Log ? "log" : "linear");
    return out.str();
}

}  // namespace tline
