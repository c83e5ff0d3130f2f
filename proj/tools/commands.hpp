#pragma once

#include "output.hpp"
#include "params.hpp"

namespace zcsync::cli {

struct Outputs {
    std::optional<CsvTable> csv;
    std::optional<nlohmann::ordered_json> json;
    Format default_format = Format::Both;
};

Outputs cmd_generate(const Params& p, bool pn);
Outputs cmd_autocorr(const Params& p);
Outputs cmd_spectrum(const Params& p);
Outputs cmd_analyze(const Params& p);
Outputs cmd_simulate(const Params& p);
Outputs cmd_select(const Params& p);

} // namespace zcsync::cli
