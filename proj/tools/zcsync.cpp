#include "CLI11.hpp"
#include "commands.hpp"
#include "zcsync/error.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace zcsync::cli;

struct Flags {
    long length = 0;
    long root = 0;
    long window = 0;
    std::vector<double> delta_lambda;
    std::vector<double> snr_db;
    long trials = 0;
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
    std::string format;
    std::string repro;

    bool zc = false;
    bool pn = false;
    int degree = 0;
    std::vector<int> taps;

    double dl_min = 0, dl_max = 0, dl_step = 0;
    bool table = false;

    long cp = 0;
    long kappa = 0;
    bool random_phase = false;
    bool noiseless = false;

    double freq_bound = 0;
    std::string candidates;
    long top = 0;
};

struct Registered {
    CLI::App* app;
    std::string name;
    CLI::Option* length;
    CLI::Option* root;
    CLI::Option* window;
    CLI::Option* delta_lambda;
    CLI::Option* snr_db;
    CLI::Option* trials;
    CLI::Option* seed;
    CLI::Option* config;
    CLI::Option* repro;
    CLI::Option* format;
    // subcommand specific, may be null
    CLI::Option* pn = nullptr;
    CLI::Option* degree = nullptr;
    CLI::Option* taps = nullptr;
    CLI::Option* dl_min = nullptr;
    CLI::Option* dl_max = nullptr;
    CLI::Option* dl_step = nullptr;
    CLI::Option* table = nullptr;
    CLI::Option* cp = nullptr;
    CLI::Option* kappa = nullptr;
    CLI::Option* random_phase = nullptr;
    CLI::Option* noiseless = nullptr;
    CLI::Option* freq_bound = nullptr;
    CLI::Option* candidates = nullptr;
    CLI::Option* top = nullptr;
};

Registered add_common(CLI::App& root_app, const std::string& name, const std::string& help, Flags& f) {
    Registered r{};
    r.name = name;
    r.app = root_app.add_subcommand(name, help);
    auto* a = r.app;
    r.length = a->add_option("-N,--length", f.length, "sequence length (odd)");
    r.root = a->add_option("--mu", f.root, "ZC root index");
    r.window = a->add_option("-W,--window", f.window, "hypothesis window size");
    r.delta_lambda = a->add_option("--delta-lambda", f.delta_lambda, "frequency offset(s), comma separated")
                         ->delimiter(',')
                         ->allow_extra_args(false);
    r.snr_db = a->add_option("--snr-db", f.snr_db, "SNR(s) in dB, comma separated")
                   ->delimiter(',')
                   ->allow_extra_args(false);
    r.trials = a->add_option("--trials", f.trials, "Monte Carlo trials");
    r.seed = a->add_option("--seed", f.seed, "master seed");
    r.config = a->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    a->add_option("--out", f.out, "output path (stdout when omitted)");
    r.format = a->add_option("--format", f.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    r.repro = a->add_option("--repro", f.repro, "named reproduction preset");
    return r;
}

void add_pn_flags(Registered& r, Flags& f) {
    r.degree = r.app->add_option("--degree", f.degree, "PN register degree");
    r.taps = r.app->add_option("--taps", f.taps, "PN feedback taps, comma separated")->delimiter(',');
}

Params resolve(const Registered& r, const Flags& f) {
    Params p;
    if (r.repro->count()) apply_preset(p, f.repro, r.name);
    if (r.config->count()) {
        std::ifstream in(f.config);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw zcsync::Error(zcsync::ErrorCode::InvalidConfig, "config", std::string("cannot parse config: ") + e.what());
        }
        apply_config(p, j);
    }
    auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
    if (given(r.length)) p.length = f.length;
    if (given(r.root)) p.root = f.root;
    if (given(r.window)) p.window = f.window;
    if (given(r.delta_lambda)) {
        p.delta_lambda = f.delta_lambda;
        p.dl_list = true;
    }
    if (given(r.snr_db)) p.snr_db = f.snr_db;
    if (given(r.trials)) p.trials = f.trials;
    if (given(r.seed)) p.seed = f.seed;
    if (given(r.pn)) p.sequence = "pn";
    if (given(r.degree)) p.pn_degree = f.degree;
    if (given(r.taps)) p.pn_taps = f.taps;
    if (given(r.dl_min)) p.dl_min = f.dl_min;
    if (given(r.dl_max)) p.dl_max = f.dl_max;
    if (given(r.dl_step)) p.dl_step = f.dl_step;
    if (given(r.table)) p.table = true;
    if (given(r.cp)) p.cp_length = f.cp;
    if (given(r.kappa)) {
        p.kappa_mode = "fixed";
        p.kappa = f.kappa;
    }
    if (given(r.random_phase)) p.random_phase = true;
    if (given(r.noiseless)) p.noiseless = true;
    if (given(r.freq_bound)) p.freq_bound = f.freq_bound;
    if (given(r.candidates)) p.candidates = f.candidates;
    if (given(r.top)) p.top = f.top;
    if (p.delta_lambda.empty() || p.snr_db.empty()) {
        throw zcsync::Error(zcsync::ErrorCode::InvalidConfig, "delta_lambda", "empty parameter list");
    }
    return p;
}

Format parse_format(const std::string& s, Format fallback) {
    if (s.empty()) return fallback;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return Format::Both;
}

std::string preset_help() {
    std::string s = "presets:\n";
    for (const auto& pr : presets()) {
        s += "  " + pr.name + " (";
        for (std::size_t i = 0; i < pr.commands.size(); ++i) s += (i ? ", " : "") + pr.commands[i];
        s += "): " + pr.description + "\n";
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zadoff-Chu timing detection under carrier frequency offset"};
    app.require_subcommand(1);
    app.footer(preset_help());
    Flags f;
    std::vector<Registered> cmds;

    auto gen = add_common(app, "generate", "emit a ZC or PN sequence", f);
    gen.app->add_flag("--zc", f.zc, "ZC sequence (default)");
    gen.pn = gen.app->add_flag("--pn", f.pn, "PN sequence");
    add_pn_flags(gen, f);
    cmds.push_back(gen);

    auto ac = add_common(app, "autocorr", "offset autocorrelation, closed form and brute force", f);
    ac.dl_min = ac.app->add_option("--dl-min", f.dl_min, "grid start");
    ac.dl_max = ac.app->add_option("--dl-max", f.dl_max, "grid end");
    ac.dl_step = ac.app->add_option("--dl-step", f.dl_step, "grid step");
    cmds.push_back(ac);

    auto sp = add_common(app, "spectrum", "timing spectrum and error floors", f);
    sp.table = sp.app->add_flag("--table", f.table, "critical offset per shift offset");
    cmds.push_back(sp);

    auto an = add_common(app, "analyze", "analytic timing distribution", f);
    cmds.push_back(an);

    auto sim = add_common(app, "simulate", "Monte Carlo timing detection", f);
    sim.pn = sim.app->add_flag("--pn", f.pn, "use a PN preamble");
    add_pn_flags(sim, f);
    sim.cp = sim.app->add_option("--cp", f.cp, "cyclic prefix length (default W-1)");
    sim.kappa = sim.app->add_option("--kappa", f.kappa, "fixed arrival time instead of uniform");
    sim.random_phase = sim.app->add_flag("--random-phase", f.random_phase, "random common phase per trial");
    sim.noiseless = sim.app->add_flag("--noiseless", f.noiseless, "omit the noise term");
    cmds.push_back(sim);

    auto sel = add_common(app, "select", "rank root indices", f);
    sel.freq_bound = sel.app->add_option("--freq-bound", f.freq_bound, "largest expected |delta_lambda|");
    sel.candidates = sel.app->add_option("--candidates", f.candidates, "'all' or a comma separated list of roots");
    sel.top = sel.app->add_option("--top", f.top, "keep the best K roots");
    cmds.push_back(sel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        for (const auto& r : cmds) {
            if (!r.app->parsed()) continue;
            const Params p = resolve(r, f);
            Outputs o;
            if (r.name == "generate") o = cmd_generate(p, p.sequence == "pn");
            else if (r.name == "autocorr") o = cmd_autocorr(p);
            else if (r.name == "spectrum") o = cmd_spectrum(p);
            else if (r.name == "analyze") o = cmd_analyze(p);
            else if (r.name == "simulate") o = cmd_simulate(p);
            else o = cmd_select(p);
            emit(o.csv, o.json, parse_format(f.format, o.default_format), f.out);
        }
    } catch (const zcsync::Error& e) {
        std::cerr << "error: " << zcsync::to_string(e.code()) << " (" << e.parameter() << "): " << e.what() << "\n";
        return e.code() == zcsync::ErrorCode::NumericFailure ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
