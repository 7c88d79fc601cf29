#pragma once

// Time sweeps of a state under a channel: configuration parsing, row
// evaluation (optionally on several threads), CSV/JSON output and the
// figure presets.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dwf/channels.hpp"
#include "dwf/measures.hpp"
#include "dwf/states.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

enum class OutputFormat { Csv, Json };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ValidationError("unknown output format '" + s + "' (expected csv or json)");
}

inline const std::vector<std::string>& measure_vocabulary() {
    static const std::vector<std::string> v{"dwf", "negativity", "mana", "coherence", "concurrence", "fidelity"};
    return v;
}

struct SweepConfig {
    std::string name;  // series label, used for preset file names
    System system = System::Qubit;
    std::string state;           // preset name, ns<k>, bell label, mixed or bloch
    std::vector<double> bloch;   // raw parameters when state == "bloch"
    ChannelSpec channel;
    double t_start = 0;
    double t_stop = 0;
    int steps = 500;
    std::vector<std::string> measures;  // emitted columns, "dwf" excluded
    std::string output;
    OutputFormat format = OutputFormat::Csv;
    int threads = 1;  // 0 picks the hardware concurrency

    double time_at(int k) const {
        if (k == steps - 1) return t_stop;
        return t_start + (t_stop - t_start) * double(k) / double(steps - 1);
    }
};

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(offset), '\n'));
}

inline std::string key_location(const std::string& text, const std::string& key) {
    const auto at = text.find("\"" + key + "\"");
    if (at == std::string::npos) return "key '" + key + "'";
    return "line " + std::to_string(line_of_offset(text, at)) + ", key '" + key + "'";
}

}  // namespace detail

/// Resolves a state spec: mixed, bloch, ns<k> (exact negative state),
/// a Bell label or a named preset of the right system.
inline Matrix resolve_state(System sys, const std::string& spec, const std::vector<double>& bloch = {}) {
    const int d = dimension_of(sys);
    if (spec == "mixed") return identity(d) / double(d);
    if (spec == "bloch") return state_from_parameters(sys, bloch);
    if (spec.size() == 3 && spec.rfind("ns", 0) == 0 && spec[2] >= '1' && spec[2] <= '9')
        return exact_negative_state(sys, spec[2] - '0').state;
    if (sys == System::TwoQubit && spec.rfind("bell_", 0) != 0) {
        try {
            return bell_state(spec);
        } catch (const ValidationError&) {
        }
    }
    Preset p = preset(spec);
    if (p.system != sys) {
        throw ValidationError("state '" + spec + "' is a " + to_string(p.system) + " state, config system is " +
                              to_string(sys));
    }
    return p.state;
}

/// Checks everything that does not depend on how the config was written.
inline void validate_config(const SweepConfig& c) {
    if (!(c.t_start >= 0)) throw ValidationError("t_start must be >= 0");
    if (!(c.t_stop > c.t_start)) throw ValidationError("t_stop must be greater than t_start");
    if (c.steps < 2) throw ValidationError("steps must be >= 2, got " + std::to_string(c.steps));
    if (c.threads < 0) throw ValidationError("threads must be >= 0");
    for (const auto& m : c.measures) {
        const auto& v = measure_vocabulary();
        if (std::find(v.begin(), v.end(), m) == v.end()) {
            throw ValidationError("unknown measure '" + m +
                                  "' (expected negativity, mana, coherence, concurrence, fidelity or dwf)");
        }
        if ((m == "concurrence" || m == "fidelity") && c.system != System::TwoQubit) {
            throw ValidationError("measure '" + m + "' requires system twoqubit, got " + to_string(c.system));
        }
    }
    if (c.channel.family == ChannelFamily::Rtn) classify_rtn(c.channel.rtn_params());
    if (c.channel.family == ChannelFamily::Ad) classify_ad(c.channel.ad_params());
    if (c.state == "bloch" && c.bloch.empty()) throw ValidationError("state 'bloch' needs a 'bloch' parameter array");
    resolve_state(c.system, c.state, c.bloch);
}

/// Parses a flat JSON object. Unknown keys, wrong value types and
/// inconsistent combinations are reported with the line of the key.
inline SweepConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config is not valid JSON (line " + std::to_string(detail::line_of_offset(text, e.byte)) +
                              "): " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");

    static const std::vector<std::string> known{"name",   "system", "state",  "bloch",   "channel",
                                                "gamma",  "b",      "g",      "t_start", "t_stop",
                                                "steps",  "measures", "output", "format", "threads"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ValidationError("unknown config key at " + detail::key_location(text, it.key()));
        }
    }
    auto where = [&](const std::string& key) { return detail::key_location(text, key); };
    auto need = [&](const std::string& key) -> const nlohmann::json& {
        if (!j.contains(key)) throw ValidationError("config is missing required key '" + key + "'");
        return j.at(key);
    };
    auto str = [&](const std::string& key) {
        const auto& v = j.at(key);
        if (!v.is_string()) throw ValidationError("expected a string at " + where(key));
        return v.get<std::string>();
    };
    auto num = [&](const std::string& key) {
        const auto& v = j.at(key);
        if (!v.is_number()) throw ValidationError("expected a number at " + where(key));
        return v.get<double>();
    };
    auto integer = [&](const std::string& key) {
        const auto& v = j.at(key);
        if (!v.is_number_integer()) throw ValidationError("expected an integer at " + where(key));
        return v.get<long long>();
    };

    SweepConfig c;
    try {
        need("system");
        c.system = parse_system(str("system"));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + " (" + where("system") + ")");
    }
    if (j.contains("name")) c.name = str("name");
    if (j.contains("bloch")) {
        const auto& v = j.at("bloch");
        if (!v.is_array()) throw ValidationError("expected an array of numbers at " + where("bloch"));
        for (const auto& x : v) {
            if (!x.is_number()) throw ValidationError("expected an array of numbers at " + where("bloch"));
            c.bloch.push_back(x.get<double>());
        }
    }
    if (j.contains("state")) {
        c.state = str("state");
    } else if (!c.bloch.empty()) {
        c.state = "bloch";
    } else {
        throw ValidationError("config needs 'state' or 'bloch'");
    }
    if (!c.bloch.empty() && c.state != "bloch") {
        throw ValidationError("'bloch' given together with state '" + c.state + "' at " + where("bloch"));
    }

    const std::string family = j.contains("channel") ? str("channel") : "none";
    try {
        c.channel.family = parse_channel_family(family);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + " (" + where("channel") + ")");
    }
    if (c.channel.family == ChannelFamily::Rtn) {
        if (j.contains("g")) throw ValidationError("'g' does not apply to the rtn channel (" + where("g") + ")");
        need("gamma");
        need("b");
        c.channel.gamma = num("gamma");
        c.channel.second = num("b");
    } else if (c.channel.family == ChannelFamily::Ad) {
        if (j.contains("b")) throw ValidationError("'b' does not apply to the ad channel (" + where("b") + ")");
        need("gamma");
        need("g");
        c.channel.gamma = num("gamma");
        c.channel.second = num("g");
    } else {
        for (const char* k : {"gamma", "b", "g"})
            if (j.contains(k)) throw ValidationError(std::string("'") + k + "' needs a channel (" + where(k) + ")");
    }

    if (j.contains("t_start")) c.t_start = num("t_start");
    need("t_stop");
    c.t_stop = num("t_stop");
    if (j.contains("steps")) {
        const long long s = integer("steps");
        if (s < 2 || s > 10'000'000) throw ValidationError("steps must be in [2, 10000000] at " + where("steps"));
        c.steps = int(s);
    }
    if (j.contains("measures")) {
        const auto& v = j.at("measures");
        std::vector<std::string> names;
        if (v.is_string()) {
            std::stringstream ss(v.get<std::string>());
            std::string item;
            while (std::getline(ss, item, ',')) {
                item.erase(0, item.find_first_not_of(" \t"));
                item.erase(item.find_last_not_of(" \t") + 1);
                if (!item.empty()) names.push_back(item);
            }
        } else if (v.is_array()) {
            for (const auto& x : v) {
                if (!x.is_string()) throw ValidationError("expected measure names at " + where("measures"));
                names.push_back(x.get<std::string>());
            }
        } else {
            throw ValidationError("expected an array or comma-separated string at " + where("measures"));
        }
        for (const auto& m : names) {
            if (std::find(c.measures.begin(), c.measures.end(), m) == c.measures.end()) c.measures.push_back(m);
        }
    }
    if (j.contains("output")) c.output = str("output");
    if (j.contains("format")) c.format = parse_format(str("format"));
    if (j.contains("threads")) {
        const long long t = integer("threads");
        if (t < 0 || t > 1024) throw ValidationError("threads must be in [0, 1024] at " + where("threads"));
        c.threads = int(t);
    }
    try {
        validate_config(c);
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        for (const char* k : {"measures", "steps", "t_stop", "t_start", "state", "gamma"})
            if (msg.find(k) != std::string::npos && j.contains(k)) throw ValidationError(msg + " (" + where(k) + ")");
        throw;
    }
    c.measures.erase(std::remove(c.measures.begin(), c.measures.end(), "dwf"), c.measures.end());
    return c;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

inline Matrix initial_state(const SweepConfig& c) { return resolve_state(c.system, c.state, c.bloch); }

struct SweepRow {
    double t = 0;
    DwfTable dwf;
    std::vector<double> measures;  // same order as SweepConfig::measures
    std::string regime;
};

inline std::vector<std::string> column_names(const SweepConfig& c) {
    std::vector<std::string> cols{"t"};
    const int d = dimension_of(c.system);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) cols.push_back("W_" + std::to_string(i) + "_" + std::to_string(j));
    cols.insert(cols.end(), c.measures.begin(), c.measures.end());
    cols.push_back("regime");
    return cols;
}

inline SweepRow evaluate_row(const SweepConfig& c, const Matrix& rho0, const PhasePointOperatorSet& ops, double t) {
    SweepRow row;
    row.t = t;
    const Matrix rho = evolve(rho0, c.system, c.channel, t);
    row.dwf = compute_dwf(rho, ops);
    for (const auto& m : c.measures) {
        if (m == "negativity") row.measures.push_back(negativity(rho, ops));
        else if (m == "mana") row.measures.push_back(mana(row.dwf));
        else if (m == "coherence") row.measures.push_back(coherence_l1(rho));
        else if (m == "concurrence") row.measures.push_back(concurrence(rho));
        else if (m == "fidelity") row.measures.push_back(teleportation_fidelity(rho).fidelity);
    }
    row.regime = regime_label(c.channel);
    return row;
}

/// Evaluates every grid point from the initial state. Rows are written into
/// fixed slots, so the result does not depend on the thread count. The first
/// failure in grid order is rethrown.
inline std::vector<SweepRow> run_sweep(const SweepConfig& c) {
    validate_config(c);
    const Matrix rho0 = initial_state(c);
    const PhasePointOperatorSet ops = PhasePointOperatorSet::standard(dimension_of(c.system));
    std::vector<SweepRow> rows(c.steps);
    std::vector<std::exception_ptr> errors(c.steps);

    int workers = c.threads == 0 ? int(std::max(1u, std::thread::hardware_concurrency())) : c.threads;
    workers = std::max(1, std::min(workers, c.steps));
    auto work = [&](int first, int stride) {
        for (int k = first; k < c.steps; k += stride) {
            try {
                rows[k] = evaluate_row(c, rho0, ops, c.time_at(k));
            } catch (...) {
                errors[k] = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& th : pool) th.join();
    }
    for (int k = 0; k < c.steps; ++k) {
        if (!errors[k]) continue;
        try {
            std::rethrow_exception(errors[k]);
        } catch (const KernelViolation& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", c.time_at(k));
            throw KernelViolation(std::string(e.what()) + " (sweep aborted at t=" + buf + ")");
        }
    }
    return rows;
}

/// %.12g with negative zero printed as 0.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    if (std::string(buf) == "-0") return "0";
    return buf;
}

inline nlohmann::ordered_json config_json(const SweepConfig& c) {
    nlohmann::ordered_json j;
    if (!c.name.empty()) j["name"] = c.name;
    j["system"] = to_string(c.system);
    j["state"] = c.state;
    if (!c.bloch.empty()) j["bloch"] = c.bloch;
    j["channel"] = to_string(c.channel.family);
    if (c.channel.family != ChannelFamily::None) {
        j["gamma"] = c.channel.gamma;
        j[c.channel.family == ChannelFamily::Rtn ? "b" : "g"] = c.channel.second;
    }
    j["t_start"] = c.t_start;
    j["t_stop"] = c.t_stop;
    j["steps"] = c.steps;
    j["measures"] = c.measures;
    j["format"] = to_string(c.format);
    return j;
}

inline std::string render_csv(const std::vector<SweepRow>& rows, const SweepConfig& c) {
    std::string out;
    const auto cols = column_names(c);
    for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
    out += "\n";
    for (const auto& r : rows) {
        out += format_number(r.t);
        for (double w : r.dwf.row_major()) out += "," + format_number(w);
        for (double m : r.measures) out += "," + format_number(m);
        out += "," + r.regime + "\n";
    }
    return out;
}

inline std::string render_json(const std::vector<SweepRow>& rows, const SweepConfig& c) {
    // Values go through the CSV text so both formats carry identical numbers.
    auto rounded = [](double x) { return std::strtod(format_number(x).c_str(), nullptr); };
    const auto cols = column_names(c);
    nlohmann::ordered_json doc;
    doc["config"] = config_json(c);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        std::size_t k = 0;
        row[cols[k++]] = rounded(r.t);
        for (double w : r.dwf.row_major()) row[cols[k++]] = rounded(w);
        for (double m : r.measures) row[cols[k++]] = rounded(m);
        row[cols[k]] = r.regime;
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

inline std::string render(const std::vector<SweepRow>& rows, const SweepConfig& c) {
    return c.format == OutputFormat::Csv ? render_csv(rows, c) : render_json(rows, c);
}

/// Writes through a temporary file in the same directory and renames it
/// over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write output file '" + path + "'");
        out << content;
        out.flush();
        if (!out) throw ValidationError("failed while writing output file '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ValidationError("cannot replace output file '" + path + "'");
    }
}

inline void write_output(const std::vector<SweepRow>& rows, const SweepConfig& c) {
    if (rows.empty()) throw ValidationError("write_output: no rows to write");
    if (c.output.empty()) throw ValidationError("write_output: no output path configured");
    write_file_atomic(c.output, render(rows, c));
}

struct FigurePreset {
    std::string name;
    std::string description;
    std::vector<SweepConfig> series;
};

namespace detail {

inline SweepConfig series(const std::string& name, System sys, const std::string& state, ChannelSpec ch,
                          double t_stop, std::vector<std::string> measures) {
    SweepConfig c;
    c.name = name;
    c.system = sys;
    c.state = state;
    c.channel = ch;
    c.t_stop = t_stop;
    c.measures = std::move(measures);
    return c;
}

}  // namespace detail

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2",  "fig3",  "fig4",  "fig5",  "fig6",  "fig7",  "fig8", "fig9",
                                                "fig10", "fig11", "fig12", "fig13", "fig14", "fig15", "fig16"};
    return names;
}

/// Time ranges: non-Markovian presets cover at least three oscillation
/// periods of the kernel, Markovian ones at least five decay constants of
/// the slowest mode.
inline FigurePreset figure_preset(const std::string& name) {
    const auto nm_rtn = ChannelSpec::rtn(0.001, 0.05);
    const auto m_rtn = ChannelSpec::rtn(1, 0.07);
    const auto nm_ad = ChannelSpec::ad(50, 0.01);
    const auto m_ad = ChannelSpec::ad(0.01, 1);
    const auto nm_ad_slow = ChannelSpec::ad(1, 0.005);
    using detail::series;
    const System Q = System::Qubit, T = System::Qutrit, TQ = System::TwoQubit;
    const std::vector<std::string> two_qubit_states{"ns1", "ns2", "ns3", "bell_phi_plus"};
    FigurePreset f;
    f.name = name;
    auto per_state = [&](const std::string& measure, ChannelSpec ch, const std::string& tag, double t_stop) {
        for (const auto& s : two_qubit_states)
            f.series.push_back(series("twoqubit_" + s + "_" + tag, TQ, s, ch, t_stop, {measure}));
    };
    if (name == "fig2") {
        f.description = "qubit NS1 caption state DWF, non-Markovian RTN (gamma=0.001, b=0.05), t in [0,250]";
        f.series = {series("qubit_ns1_rtn", Q, "qubit_ns1", nm_rtn, 250, {})};
    } else if (name == "fig3") {
        f.description = "qubit NS1 caption state DWF, Markovian RTN (gamma=1, b=0.07), t in [0,520]";
        f.series = {series("qubit_ns1_rtn", Q, "qubit_ns1", m_rtn, 520, {})};
    } else if (name == "fig4") {
        f.description = "qubit NS1 caption state DWF, non-Markovian AD (gamma=50, g=0.01), t in [0,25]";
        f.series = {series("qubit_ns1_ad", Q, "qubit_ns1", nm_ad, 25, {})};
    } else if (name == "fig5") {
        f.description = "qubit NS1 caption state DWF, Markovian AD (gamma=0.01, g=1), t in [0,520]";
        f.series = {series("qubit_ns1_ad", Q, "qubit_ns1", m_ad, 520, {})};
    } else if (name == "fig6") {
        f.description = "qutrit NS1 caption state DWF, non-Markovian RTN (gamma=0.001, b=0.05), t in [0,250]";
        f.series = {series("qutrit_ns1_rtn", T, "qutrit_ns1", nm_rtn, 250, {})};
    } else if (name == "fig7") {
        f.description = "qutrit NS1 caption state DWF, non-Markovian AD (gamma=50, g=0.01), t in [0,25]";
        f.series = {series("qutrit_ns1_ad", T, "qutrit_ns1", nm_ad, 25, {})};
    } else if (name == "fig8") {
        f.description = "two-qubit NS1 caption state DWF, non-Markovian RTN (gamma=0.001, b=0.05), t in [0,250]";
        f.series = {series("twoqubit_ns1_rtn", TQ, "twoqubit_ns1", nm_rtn, 250, {})};
    } else if (name == "fig9") {
        f.description = "two-qubit NS1 caption state DWF, non-Markovian AD (gamma=50, g=0.01), t in [0,25]";
        f.series = {series("twoqubit_ns1_ad", TQ, "twoqubit_ns1", nm_ad, 25, {})};
    } else if (name == "fig10") {
        f.description = "qutrit exact NS1/NS2 mana under non-Markovian AD (gamma=50, g=0.01, t in [0,25]) and "
                        "non-Markovian RTN (gamma=0.001, b=0.05, t in [0,250])";
        f.series = {series("qutrit_ns1_ad", T, "ns1", nm_ad, 25, {"mana"}),
                    series("qutrit_ns2_ad", T, "ns2", nm_ad, 25, {"mana"}),
                    series("qutrit_ns1_rtn", T, "ns1", nm_rtn, 250, {"mana"}),
                    series("qutrit_ns2_rtn", T, "ns2", nm_rtn, 250, {"mana"})};
    } else if (name == "fig11") {
        f.description = "negativity of the exact NS1 states of all three systems under non-Markovian RTN "
                        "(gamma=0.001, b=0.05, t in [0,250]) and non-Markovian AD (gamma=50, g=0.01, t in [0,25])";
        for (System s : {Q, T, TQ}) f.series.push_back(series(std::string(to_string(s)) + "_ns1_rtn", s, "ns1", nm_rtn, 250, {"negativity"}));
        for (System s : {Q, T, TQ}) f.series.push_back(series(std::string(to_string(s)) + "_ns1_ad", s, "ns1", nm_ad, 25, {"negativity"}));
    } else if (name == "fig12") {
        f.description = "coherence of two-qubit NS1-NS3 and Bell phi+, non-Markovian RTN (gamma=0.001, b=0.05), "
                        "t in [0,250]";
        per_state("coherence", nm_rtn, "rtn", 250);
    } else if (name == "fig13") {
        f.description = "coherence of two-qubit NS1-NS3 and Bell phi+, non-Markovian AD (gamma=1, g=0.005), "
                        "t in [0,250]";
        per_state("coherence", nm_ad_slow, "ad", 250);
    } else if (name == "fig14") {
        f.description = "concurrence of two-qubit NS1-NS3 and Bell phi+, non-Markovian RTN (gamma=0.001, b=0.05) "
                        "and non-Markovian AD (gamma=1, g=0.005), t in [0,250]";
        per_state("concurrence", nm_rtn, "rtn", 250);
        per_state("concurrence", nm_ad_slow, "ad", 250);
    } else if (name == "fig15") {
        f.description = "teleportation fidelity of two-qubit NS1-NS3 and Bell phi+, non-Markovian RTN "
                        "(gamma=0.001, b=0.05), t in [0,250]";
        per_state("fidelity", nm_rtn, "rtn", 250);
    } else if (name == "fig16") {
        f.description = "teleportation fidelity of two-qubit NS1-NS3 and Bell phi+, non-Markovian AD "
                        "(gamma=1, g=0.005), t in [0,250]";
        per_state("fidelity", nm_ad_slow, "ad", 250);
    } else {
        throw ValidationError("unknown figure preset '" + name + "' (expected fig2..fig16)");
    }
    return f;
}

/// Runs every series of a preset and writes `<dir>/<series>.<format>`.
inline std::vector<std::string> run_figure_preset(const FigurePreset& f, const std::string& dir, OutputFormat format,
                                                  int threads = 1) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory '" + dir + "'");
    std::vector<std::string> written;
    for (SweepConfig c : f.series) {
        c.format = format;
        c.threads = threads;
        c.output = (std::filesystem::path(dir) / (c.name + "." + to_string(format))).string();
        write_output(run_sweep(c), c);
        written.push_back(c.output);
    }
    return written;
}

}  // namespace dwf
