#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "dwf/dwf.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kKernel = 2 };

nlohmann::ordered_json table_json(const dwf::DwfTable& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int p = 0; p < t.dimension; ++p) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int q = 0; q < t.dimension; ++q) row.push_back(t.entries(p, q));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::ordered_json matrix_json(const dwf::Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

int run_verify() {
    const dwf::VerifyReport rep = dwf::verify_all();
    for (const auto& item : rep.items)
        std::printf("%-4s %-40s %s\n", dwf::to_string(item.status), item.name.c_str(), item.detail.c_str());
    std::printf("%d PASS, %d WARN, %d FAIL\n", rep.count(dwf::Status::Pass), rep.count(dwf::Status::Warn),
                rep.count(dwf::Status::Fail));
    return rep.ok() ? kOk : kValidation;
}

struct TableArgs {
    std::string system, state, channel = "none";
    double gamma = 0, b = -1, g = -1, t = 0;
};

int run_table(const TableArgs& a) {
    dwf::SweepConfig c;
    c.system = dwf::parse_system(a.system);
    c.state = a.state;
    c.channel.family = dwf::parse_channel_family(a.channel);
    if (c.channel.family == dwf::ChannelFamily::Rtn) {
        if (a.g >= 0) throw dwf::ValidationError("--g does not apply to the rtn channel");
        if (a.b < 0) throw dwf::ValidationError("the rtn channel needs --gamma and --b");
        c.channel.gamma = a.gamma;
        c.channel.second = a.b;
    } else if (c.channel.family == dwf::ChannelFamily::Ad) {
        if (a.b >= 0) throw dwf::ValidationError("--b does not apply to the ad channel");
        if (a.g < 0) throw dwf::ValidationError("the ad channel needs --gamma and --g");
        c.channel.gamma = a.gamma;
        c.channel.second = a.g;
    }
    const dwf::Matrix rho = dwf::evolve(dwf::initial_state(c), c.system, c.channel, a.t);
    const auto ops = dwf::PhasePointOperatorSet::standard(dwf::dimension_of(c.system));
    const dwf::DwfTable w = dwf::compute_dwf(rho, ops);
    nlohmann::ordered_json j;
    j["system"] = dwf::to_string(c.system);
    j["state"] = c.state;
    j["channel"] = dwf::to_string(c.channel.family);
    if (c.channel.family != dwf::ChannelFamily::None) {
        j["gamma"] = c.channel.gamma;
        j[c.channel.family == dwf::ChannelFamily::Rtn ? "b" : "g"] = c.channel.second;
    }
    j["t"] = a.t;
    j["regime"] = dwf::regime_label(c.channel);
    j["W"] = table_json(w);
    j["min_W"] = w.min();
    j["sum_W"] = w.sum();
    j["negativity"] = dwf::negativity(rho, ops);
    j["mana"] = dwf::mana(w);
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int run_negstate(const std::string& system, int rank) {
    const dwf::System sys = dwf::parse_system(system);
    const auto ops = dwf::PhasePointOperatorSet::standard(dwf::dimension_of(sys));
    const dwf::NegativeStateResult r = dwf::negative_state(ops, rank);
    nlohmann::ordered_json j;
    j["system"] = dwf::to_string(sys);
    j["rank"] = r.rank;
    j["point"] = {{"q", r.point.q}, {"p", r.point.p}};
    j["eigenvalue"] = r.eigenvalue;
    j["degenerate"] = r.degenerate;
    j["negativity"] = r.negativity;
    j["vector"] = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < r.vector.size(); ++k) j["vector"].push_back({r.vector(k).real(), r.vector(k).imag()});
    j["state"] = matrix_json(r.state);
    nlohmann::ordered_json bloch;
    const auto names = dwf::parameter_names(sys);
    const auto values = dwf::flatten(dwf::bloch_from_density(r.state));
    for (std::size_t k = 0; k < names.size(); ++k) bloch[names[k]] = values[k];
    j["bloch"] = bloch;
    const dwf::DwfTable w = dwf::compute_dwf(r.state, ops);
    j["W"] = table_json(w);
    j["mana"] = dwf::mana(w);
    std::cout << j.dump(2) << "\n";
    return kOk;
}

struct SweepArgs {
    std::string config, preset, out, format;
    int threads = -1;
};

int run_sweep_command(const SweepArgs& a) {
    if (a.config.empty() == a.preset.empty()) throw dwf::ValidationError("sweep needs exactly one of --config or --preset");
    if (!a.preset.empty()) {
        const dwf::FigurePreset f = dwf::figure_preset(a.preset);
        const dwf::OutputFormat fmt = a.format.empty() ? dwf::OutputFormat::Csv : dwf::parse_format(a.format);
        const std::string dir = a.out.empty() ? a.preset : a.out;
        std::fprintf(stderr, "%s: %s\n", f.name.c_str(), f.description.c_str());
        for (const auto& path : dwf::run_figure_preset(f, dir, fmt, a.threads < 0 ? 1 : a.threads))
            std::printf("%s\n", path.c_str());
        return kOk;
    }
    dwf::SweepConfig c = dwf::load_config(a.config);
    if (!a.out.empty()) c.output = a.out;
    if (!a.format.empty()) c.format = dwf::parse_format(a.format);
    if (a.threads >= 0) c.threads = a.threads;
    const auto rows = dwf::run_sweep(c);
    if (c.output.empty() || c.output == "-") {
        std::cout << dwf::render(rows, c);
    } else {
        dwf::write_output(rows, c);
        std::printf("%s\n", c.output.c_str());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Wigner functions of qubits, qutrits and two-qubit states under (non-)Markovian noise"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the full self-check suite");

    TableArgs ta;
    auto* table = app.add_subcommand("table", "print one DWF table as JSON");
    table->add_option("--system", ta.system, "qubit, qutrit or twoqubit")->required();
    table->add_option("--state", ta.state, "preset name, ns<k>, Bell label or mixed")->required();
    table->add_option("--channel", ta.channel, "rtn, ad or none");
    table->add_option("--gamma", ta.gamma, "channel rate gamma");
    table->add_option("--b", ta.b, "RTN coupling b");
    table->add_option("--g", ta.g, "AD rate g");
    table->add_option("--t", ta.t, "evaluation time");

    std::string ns_system;
    int ns_rank = 1;
    auto* negstate = app.add_subcommand("negstate", "print a negative quantum state as JSON");
    negstate->add_option("--system", ns_system, "qubit, qutrit or twoqubit")->required();
    negstate->add_option("--rank", ns_rank, "1-based rank")->required();

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "run a time sweep from a config file or a figure preset");
    sweep->add_option("--config", sa.config, "JSON config file");
    sweep->add_option("--preset", sa.preset, "fig2 .. fig16");
    sweep->add_option("--out", sa.out, "output file (config) or directory (preset)");
    sweep->add_option("--format", sa.format, "csv or json");
    sweep->add_option("--threads", sa.threads, "worker threads, 0 for all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (verify->parsed()) return run_verify();
        if (table->parsed()) return run_table(ta);
        if (negstate->parsed()) return run_negstate(ns_system, ns_rank);
        if (sweep->parsed()) return run_sweep_command(sa);
    } catch (const dwf::KernelViolation& e) {
        std::fprintf(stderr, "kernel violation: %s\n", e.what());
        return kKernel;
    } catch (const dwf::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidation;
    }
    return kValidation;
}
