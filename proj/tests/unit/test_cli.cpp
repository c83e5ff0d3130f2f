#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ZCSYNC_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("zcsync_cli_" + std::to_string(getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("generate") {
    const auto r = run("generate --zc -N 839 --mu 140");
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 840u);
    CHECK(l[0] == "n,re,im");
    CHECK(l[1] == "0,1,0");

    CHECK(run("generate --zc -N 838 --mu 3").code == 2);
    CHECK(run("generate --zc -N 839 --mu 0").code == 2);

    const auto pn = run("generate --pn --degree 25 --length 839");
    CHECK(pn.code == 0);
    const auto pl = lines(pn.out);
    REQUIRE(pl.size() == 840u);
    for (std::size_t i = 1; i < pl.size(); ++i) {
        const auto re = pl[i].substr(pl[i].find(',') + 1);
        REQUIRE((re == "1,0" || re == "-1,0"));
    }
}

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("spectrum --format xml").code == 2);
    CHECK(run("spectrum --repro fig99").code == 2);
    CHECK(run("spectrum --repro fig6").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("simulate --help").code == 0);
}

TEST_CASE("table golden files") {
    for (const char* mu : {"140", "367"}) {
        const auto r = run(std::string("spectrum --repro table1 --mu ") + mu + " --format csv");
        CHECK(r.code == 0);
        CHECK(r.out == slurp(std::filesystem::path(ZCSYNC_TEST_DATA) / (std::string("table1_mu") + mu + ".csv")));
    }
}

TEST_CASE("spectrum summary") {
    const auto r = run("spectrum -N 839 --mu 367 -W 20 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("floor_above_half").get<double>() == 0.2);
    CHECK(j.at("floor_at_half").get<double>() == 0.1);
    CHECK(j.at("min_critical_offset").get<long>() == 1);
}

TEST_CASE("autocorr grid") {
    const auto r = run("autocorr -N 839 --mu 140 -W 16 --delta-lambda -0.5,0,0.5");
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 1u + 31u * 3u);
    CHECK(l[0] == "delta_kappa,delta_lambda,mag_sq_closed,mag_sq_brute");
    const auto grid = lines(run("autocorr -W 2 --dl-min -1 --dl-max 1 --dl-step 0.5").out);
    CHECK(grid.size() == 1u + 3u * 5u);
}

TEST_CASE("files are written for both formats") {
    const auto stem = scratch("spec");
    CHECK(run("spectrum --mu 140 --out " + stem.string()).code == 0);
    CHECK(std::filesystem::exists(stem.string() + ".csv"));
    const auto j = nlohmann::json::parse(slurp(stem.string() + ".json"));
    CHECK(j.at("floor_above_half").get<double>() == 0.625);
    const auto csv = scratch("gen.csv");
    CHECK(run("generate -N 11 --mu 3 --out " + csv.string()).code == 0);
    CHECK(lines(slurp(csv)).size() == 12u);
}

TEST_CASE("simulate is deterministic and shares the analyze schema") {
    const std::string args = "simulate --mu 140 -W 16 --delta-lambda 0.5 --snr-db -15 --trials 500 --seed 7";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run(args + " --seed 8").out != a.out);

    const auto cfg = scratch("scenario.json");
    std::ofstream(cfg) << R"({"N": 839, "mu": 367, "W": 20, "delta_lambda": 0.7, "eta_db": 0.0})";
    const auto an = run("analyze --format json --config " + cfg.string());
    CHECK(an.code == 0);
    const auto aj = nlohmann::json::parse(an.out);
    CHECK(std::abs(aj.at("error_probability").get<double>() - 0.2) < 0.01);
    const auto sim = run("simulate --format json --trials 300 --config " + cfg.string());
    CHECK(sim.code == 0);
    const auto sj = nlohmann::json::parse(sim.out);
    CHECK(sj.at("config").at("mu").get<long>() == 367);

    // a summary written by analyze feeds straight back into simulate
    const auto summary = scratch("summary.json");
    std::ofstream(summary) << an.out;
    CHECK(run("simulate --format json --trials 100 --config " + summary.string()).code == 0);

    // flags override the file
    const auto over = nlohmann::json::parse(run("analyze --format json --mu 140 --config " + cfg.string()).out);
    CHECK(over.at("scenario").at("mu").get<long>() == 140);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"N": 839, "colour": 3})";
    CHECK(run("analyze --config " + bad.string()).code == 2);
}

TEST_CASE("sweeps") {
    const auto r = run("analyze --mu 367 -W 16 --delta-lambda 0,0.7 --snr-db -20,-10 --format csv");
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5u);
    CHECK(l[0] == "delta_lambda,snr_db,error_probability");
    CHECK(l[1].rfind("0,-20,", 0) == 0);
}

TEST_CASE("select") {
    const auto r = run("select -N 839 -W 16 --candidates 140,367,29 --format csv");
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4u);
    CHECK(l[0] == "mu,min_critical_offset,floor");
    CHECK(l[1].rfind("367,52,", 0) == 0);
    CHECK(l[3].rfind("140,1,0.625", 0) == 0);
    CHECK(lines(run("select -N 839 -W 16 --top 5 --format csv").out).size() == 6u);
    CHECK(run("select --candidates 140,abc").code == 2);
    CHECK(run("select --candidates 0").code == 2);
}
