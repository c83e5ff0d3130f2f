#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zcsync::cli {

// Parameter record shared by all subcommands. Values are layered: defaults,
// then a --repro preset, then a --config file, then explicit flags.
struct Params {
    long length = 839;
    long root = 140;
    long window = 16;
    std::vector<double> delta_lambda{0.0};
    std::vector<double> snr_db{0.0};

    // simulate
    long trials = 10000;
    std::uint64_t seed = 1;
    long cp_length = -1;
    std::string kappa_mode = "uniform";
    long kappa = 0;
    std::string sequence = "zc";
    int pn_degree = 25;
    std::vector<int> pn_taps{25, 3};
    bool random_phase = false;
    bool noiseless = false;

    // autocorr grid, used when no explicit --delta-lambda list is given
    bool dl_list = false;
    double dl_min = -1.0;
    double dl_max = 1.0;
    double dl_step = 0.01;

    // spectrum
    bool table = false;

    // select
    double freq_bound = 1.0;
    std::string candidates = "all";
    long top = 0;
};

struct Preset {
    std::string name;
    std::vector<std::string> commands;
    std::string description;
};

const std::vector<Preset>& presets();

// Applies a named preset. Throws zcsync::Error (unknown preset or a preset
// that does not belong to `command`).
void apply_preset(Params& p, const std::string& name, const std::string& command);

// Reads the scenario/simulation keys of a JSON config. Accepts either a flat
// object or a summary object carrying the record under "config" or "scenario".
void apply_config(Params& p, const nlohmann::json& config);

// Scenario/simulation keys in the config-file schema.
nlohmann::ordered_json scenario_json(const Params& p, double delta_lambda, double snr_db);
nlohmann::ordered_json simulation_json(const Params& p, double delta_lambda, double snr_db);

} // namespace zcsync::cli
