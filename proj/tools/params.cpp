#include "params.hpp"

#include "zcsync/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace zcsync::cli {

namespace {

std::vector<double> snr_ramp() {
    std::vector<double> v;
    for (int i = 0; i <= 10; ++i) v.push_back(-25.0 + 2.5 * i);
    return v;
}

const std::vector<double> kSweepOffsets{0.0, 0.3, 0.5, 0.6, 0.7};

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list{
        {"fig3", {"autocorr"}, "offset autocorrelation, mu=140, W=16, dl in [-1, 1]"},
        {"table1", {"spectrum"}, "critical offsets for W=16 (use --mu 140 or 367)"},
        {"fig4", {"spectrum"}, "timing spectrum, mu=140, W=16"},
        {"fig6", {"analyze", "simulate"}, "timing distribution, mu=140, W=16, dl=0.5, -15 dB"},
        {"fig7", {"analyze", "simulate"}, "error probability sweep, mu=140, W=16"},
        {"fig8", {"spectrum"}, "timing spectrum, mu=367, W=20"},
        {"fig9", {"analyze", "simulate"}, "timing distribution, mu=367, W=20, dl=0.5, -15 dB"},
        {"fig10", {"analyze", "simulate"}, "error probability sweep, mu=367, W=20"},
        {"fig11", {"spectrum"}, "timing spectrum, mu=29, W=20"},
        {"fig12", {"analyze", "simulate"}, "timing distribution, mu=29, W=20, dl=0.5, -15 dB"},
        {"fig13", {"analyze", "simulate"}, "error probability sweep, mu=29, W=20"},
    };
    return list;
}

void apply_preset(Params& p, const std::string& name, const std::string& command) {
    const auto& list = presets();
    auto it = std::find_if(list.begin(), list.end(), [&](const Preset& x) { return x.name == name; });
    if (it == list.end()) {
        throw Error(ErrorCode::InvalidConfig, "repro", "unknown preset '" + name + "'");
    }
    if (std::find(it->commands.begin(), it->commands.end(), command) == it->commands.end()) {
        throw Error(ErrorCode::InvalidConfig, "repro",
                    "preset '" + name + "' belongs to the " + it->commands.front() + " subcommand");
    }
    p.length = 839;
    if (name == "fig3") {
        p.root = 140;
        p.window = 16;
        p.dl_list = false;
        p.dl_min = -1.0;
        p.dl_max = 1.0;
        p.dl_step = 0.01;
    } else if (name == "table1" || name == "fig4") {
        p.root = 140;
        p.window = 16;
        p.table = name == "table1";
    } else if (name == "fig8" || name == "fig11") {
        p.root = name == "fig8" ? 367 : 29;
        p.window = 20;
    } else if (name == "fig6" || name == "fig9" || name == "fig12") {
        p.root = name == "fig6" ? 140 : (name == "fig9" ? 367 : 29);
        p.window = name == "fig6" ? 16 : 20;
        p.delta_lambda = {0.5};
        p.snr_db = {-15.0};
        p.trials = 10000;
    } else {
        p.root = name == "fig7" ? 140 : (name == "fig10" ? 367 : 29);
        p.window = name == "fig7" ? 16 : 20;
        p.delta_lambda = kSweepOffsets;
        p.snr_db = snr_ramp();
        p.trials = 10000;
    }
}

namespace {

std::vector<double> number_or_list(const nlohmann::json& v, const char* key) {
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array() && !v.empty()) return v.get<std::vector<double>>();
    throw Error(ErrorCode::InvalidConfig, key, std::string(key) + " must be a number or a nonempty array");
}

template <class T>
T get_as(const nlohmann::json& v, const char* key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::InvalidConfig, key, std::string("config field ") + key + " has the wrong type");
    }
}

} // namespace

void apply_config(Params& p, const nlohmann::json& root) {
    if (!root.is_object()) throw Error(ErrorCode::InvalidConfig, "config", "config must be a JSON object");
    const nlohmann::json* cfg = &root;
    if (root.contains("config") && root["config"].is_object()) cfg = &root["config"];
    else if (root.contains("scenario") && root["scenario"].is_object()) cfg = &root["scenario"];

    static const std::set<std::string> known{
        "N", "mu", "W", "delta_lambda", "eta_db", "N_CP", "trials", "seed", "kappa_mode", "kappa",
        "sequence", "pn_degree", "pn_taps", "random_phase", "noiseless"};
    for (const auto& [key, value] : cfg->items()) {
        if (!known.count(key)) throw Error(ErrorCode::InvalidConfig, key, "unknown config field '" + key + "'");
        const char* k = key.c_str();
        if (key == "N") p.length = get_as<long>(value, k);
        else if (key == "mu") p.root = get_as<long>(value, k);
        else if (key == "W") p.window = get_as<long>(value, k);
        else if (key == "delta_lambda") {
            p.delta_lambda = number_or_list(value, k);
            p.dl_list = true;
        } else if (key == "eta_db") p.snr_db = number_or_list(value, k);
        else if (key == "N_CP") p.cp_length = get_as<long>(value, k);
        else if (key == "trials") p.trials = get_as<long>(value, k);
        else if (key == "seed") p.seed = get_as<std::uint64_t>(value, k);
        else if (key == "kappa_mode") p.kappa_mode = get_as<std::string>(value, k);
        else if (key == "kappa") p.kappa = get_as<long>(value, k);
        else if (key == "sequence") p.sequence = get_as<std::string>(value, k);
        else if (key == "pn_degree") p.pn_degree = get_as<int>(value, k);
        else if (key == "pn_taps") p.pn_taps = get_as<std::vector<int>>(value, k);
        else if (key == "random_phase") p.random_phase = get_as<bool>(value, k);
        else if (key == "noiseless") p.noiseless = get_as<bool>(value, k);
    }
}

nlohmann::ordered_json scenario_json(const Params& p, double delta_lambda, double snr_db) {
    nlohmann::ordered_json j;
    j["N"] = p.length;
    j["mu"] = p.root;
    j["W"] = p.window;
    j["delta_lambda"] = delta_lambda;
    j["eta_db"] = snr_db;
    return j;
}

nlohmann::ordered_json simulation_json(const Params& p, double delta_lambda, double snr_db) {
    auto j = scenario_json(p, delta_lambda, snr_db);
    j["N_CP"] = p.cp_length < 0 ? p.window - 1 : p.cp_length;
    j["trials"] = p.trials;
    j["seed"] = p.seed;
    j["kappa_mode"] = p.kappa_mode;
    if (p.kappa_mode == "fixed") j["kappa"] = p.kappa;
    j["sequence"] = p.sequence;
    if (p.sequence == "pn") {
        j["pn_degree"] = p.pn_degree;
        j["pn_taps"] = p.pn_taps;
    }
    j["random_phase"] = p.random_phase;
    j["noiseless"] = p.noiseless;
    return j;
}

} // namespace zcsync::cli
