#include "commands.hpp"

#include "zcsync/zcsync.hpp"

#include <cmath>
#include <sstream>

namespace zcsync::cli {

namespace {

bool is_sweep(const Params& p) { return p.delta_lambda.size() > 1 || p.snr_db.size() > 1; }

DetectionScenario scenario_of(const Params& p, double dl, double snr_db) {
    auto s = DetectionScenario::from_db(p.length, p.root, p.window, dl, snr_db);
    if (!std::isfinite(snr_db)) throw Error(ErrorCode::InvalidScenario, "snr_db", "SNR must be finite");
    return s;
}

SimulationConfig simulation_of(const Params& p, double dl, double snr_db) {
    SimulationConfig c;
    c.scenario = scenario_of(p, dl, snr_db);
    c.cp_length = p.cp_length;
    c.trials = p.trials;
    c.seed = p.seed;
    if (p.kappa_mode == "uniform") {
        c.kappa_mode = KappaMode::Uniform;
    } else if (p.kappa_mode == "fixed") {
        c.kappa_mode = KappaMode::Fixed;
        c.fixed_kappa = p.kappa;
    } else {
        throw Error(ErrorCode::InvalidConfig, "kappa_mode", "kappa_mode must be 'uniform' or 'fixed'");
    }
    if (p.sequence == "zc") {
        c.sequence = SequenceKind::Zc;
    } else if (p.sequence == "pn") {
        c.sequence = SequenceKind::Pn;
    } else {
        throw Error(ErrorCode::InvalidConfig, "sequence", "sequence must be 'zc' or 'pn'");
    }
    c.pn_degree = p.pn_degree;
    c.pn_taps = p.pn_taps;
    c.random_phase = p.random_phase;
    c.noiseless = p.noiseless;
    c.validate();
    return c;
}

std::vector<double> offset_grid(const Params& p) {
    if (p.dl_list) return p.delta_lambda;
    if (!(p.dl_step > 0.0) || !(p.dl_max >= p.dl_min)) {
        throw Error(ErrorCode::InvalidConfig, "dl_step", "frequency grid needs dl_step > 0 and dl_max >= dl_min");
    }
    std::vector<double> grid;
    const long steps = std::lround(std::floor((p.dl_max - p.dl_min) / p.dl_step + 1e-9));
    for (long i = 0; i <= steps; ++i) grid.push_back(p.dl_min + static_cast<double>(i) * p.dl_step);
    return grid;
}

} // namespace

Outputs cmd_generate(const Params& p, bool pn) {
    CsvTable csv({"n", "re", "im"});
    auto put = [&csv](std::span<const cplx> s) {
        for (std::size_t n = 0; n < s.size(); ++n) csv.row().add(static_cast<long>(n)).add(s[n].real()).add(s[n].imag());
    };
    if (pn) {
        put(pn_generate(p.pn_degree, p.pn_taps, p.length).samples());
    } else {
        put(zc_generate(p.length, p.root).samples());
    }
    return {std::move(csv), std::nullopt, Format::Csv};
}

Outputs cmd_autocorr(const Params& p) {
    const auto seq = zc_generate(p.length, p.root);
    HypothesisWindow window(p.window);
    if (window.size >= p.length) throw Error(ErrorCode::WindowTooLarge, "W", "window must be smaller than N");
    CsvTable csv({"delta_kappa", "delta_lambda", "mag_sq_closed", "mag_sq_brute"});
    const auto grid = offset_grid(p);
    for (long dk = -(window.size - 1); dk <= window.size - 1; ++dk) {
        for (double dl : grid) {
            csv.row()
                .add(dk)
                .add(dl)
                .add(autocorr_mag_sq_closed(p.root, p.length, dk, dl))
                .add(std::norm(autocorr_offset(seq, dk, dl)));
        }
    }
    return {std::move(csv), std::nullopt, Format::Csv};
}

Outputs cmd_spectrum(const Params& p) {
    const HypothesisWindow window(p.window);
    const auto spectrum = timing_spectrum(p.root, p.length, window);

    nlohmann::ordered_json j;
    j["N"] = p.length;
    j["mu"] = p.root;
    j["W"] = p.window;
    if (auto m = spectrum.min_abs_offset()) j["min_critical_offset"] = *m;
    else j["min_critical_offset"] = nullptr;
    j["floor_above_half"] = error_floor(spectrum, FloorRegime::AboveHalf);
    j["floor_at_half"] = error_floor(spectrum, FloorRegime::AtHalf);

    if (p.table) {
        CsvTable csv({"delta_kappa", "delta_lambda_dagger"});
        for (long dk = -(window.size - 1); dk <= window.size - 1; ++dk) {
            if (dk == 0) continue;
            csv.row().add(dk).add(critical_offset(p.root, p.length, dk));
        }
        return {std::move(csv), std::move(j), Format::Csv};
    }
    CsvTable csv({"delta_lambda_dagger", "magnitude"});
    for (const auto& [key, count] : spectrum.counts()) csv.row().add(key).add(spectrum.magnitude(key));
    return {std::move(csv), std::move(j), Format::Both};
}

Outputs cmd_analyze(const Params& p) {
    if (is_sweep(p)) {
        CsvTable csv({"delta_lambda", "snr_db", "error_probability"});
        nlohmann::ordered_json points = nlohmann::ordered_json::array();
        for (double dl : p.delta_lambda) {
            for (double snr : p.snr_db) {
                const double pe = error_probability(scenario_of(p, dl, snr));
                csv.row().add(dl).add(snr).add(pe);
                points.push_back({{"delta_lambda", dl}, {"snr_db", snr}, {"error_probability", pe}});
            }
        }
        nlohmann::ordered_json j;
        j["scenario"] = scenario_json(p, p.delta_lambda.front(), p.snr_db.front());
        j["scenario"]["delta_lambda"] = p.delta_lambda;
        j["scenario"]["eta_db"] = p.snr_db;
        j["points"] = std::move(points);
        return {std::move(csv), std::move(j), Format::Both};
    }
    const double dl = p.delta_lambda.front();
    const double snr = p.snr_db.front();
    const auto scenario = scenario_of(p, dl, snr);
    const auto dist = timing_distribution(scenario);
    CsvTable csv({"delta_kappa", "probability"});
    for (const auto& [dk, prob] : dist.probabilities) csv.row().add(dk).add(prob);

    nlohmann::ordered_json j;
    j["error_probability"] = dist.error_probability;
    const auto floor = predicted_floor(timing_spectrum(p.root, p.length, HypothesisWindow(p.window)), dl);
    if (floor) j["predicted_floor"] = *floor;
    else j["predicted_floor"] = nullptr;
    j["scenario"] = scenario_json(p, dl, snr);
    return {std::move(csv), std::move(j), Format::Both};
}

Outputs cmd_simulate(const Params& p) {
    if (is_sweep(p)) {
        CsvTable csv({"delta_lambda", "snr_db", "error_rate", "stderr"});
        nlohmann::ordered_json points = nlohmann::ordered_json::array();
        for (double dl : p.delta_lambda) {
            for (double snr : p.snr_db) {
                const auto r = run_experiment(simulation_of(p, dl, snr));
                csv.row().add(dl).add(snr).add(r.error_rate).add(r.std_error);
                points.push_back(
                    {{"delta_lambda", dl}, {"snr_db", snr}, {"error_rate", r.error_rate}, {"stderr", r.std_error}});
            }
        }
        nlohmann::ordered_json j;
        j["config"] = simulation_json(p, p.delta_lambda.front(), p.snr_db.front());
        j["config"]["delta_lambda"] = p.delta_lambda;
        j["config"]["eta_db"] = p.snr_db;
        j["points"] = std::move(points);
        return {std::move(csv), std::move(j), Format::Both};
    }
    const double dl = p.delta_lambda.front();
    const double snr = p.snr_db.front();
    const auto result = run_experiment(simulation_of(p, dl, snr));
    CsvTable csv({"delta_kappa", "count", "frequency"});
    for (long dk = -(p.window - 1); dk <= p.window - 1; ++dk) {
        csv.row().add(dk).add(result.count(dk)).add(result.frequency(dk));
    }
    nlohmann::ordered_json j;
    j["error_rate"] = result.error_rate;
    j["stderr"] = result.std_error;
    j["config"] = simulation_json(p, dl, snr);
    return {std::move(csv), std::move(j), Format::Both};
}

Outputs cmd_select(const Params& p) {
    std::vector<long> candidates;
    if (p.candidates == "all") {
        ZcSequence(p.length, 1); // validates N
        candidates = coprime_roots(p.length);
    } else {
        std::stringstream ss(p.candidates);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                candidates.push_back(std::stol(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidConfig, "candidates", "cannot parse candidate root '" + item + "'");
            }
        }
    }
    for (long mu : candidates) ZcSequence(p.length, mu);
    auto ranked = rank_roots(p.length, HypothesisWindow(p.window), candidates, p.freq_bound);
    if (p.top > 0 && static_cast<std::size_t>(p.top) < ranked.size()) ranked.erase(ranked.begin() + p.top, ranked.end());

    const double cut = std::ceil(p.freq_bound) + 1.0;
    CsvTable csv({"mu", "min_critical_offset", "floor"});
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& r : ranked) {
        csv.row().add(r.root).add(r.min_abs_critical_offset).add(r.floor_above_half);
        list.push_back({{"mu", r.root},
                        {"min_critical_offset", r.min_abs_critical_offset},
                        {"floor_above_half", r.floor_above_half},
                        {"mass_below", r.spectrum_mass_below(cut)}});
    }
    nlohmann::ordered_json j;
    j["N"] = p.length;
    j["W"] = p.window;
    j["freq_bound"] = p.freq_bound;
    j["ranking"] = std::move(list);
    return {std::move(csv), std::move(j), Format::Both};
}

} // namespace zcsync::cli
