#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(COBEX_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// temp files live for the whole binary run; contents are tiny
fs::path write_doc(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "cobex_cli_tests";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream(path) << text;
    return path;
}

const std::string kBaseGrid = R"({"cells": 100, "intervals": [[41, 60], [51, 70]]})";
const std::string kAltAGrid = R"({"cells": 100, "intervals": [[50, 60], [51, 61]]})";
const std::string kAltBGrid = R"({"cells": 100, "intervals": [[26, 60], [41, 75]]})";
const std::string kToyNet = R"({"nodes": [
    {"name": "R", "parents": [], "cpt": {"": 0.5}},
    {"name": "REPR", "parents": ["R"], "cpt": {"0": 0.4, "1": 0.8}}
]})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("coherence subcommand") {
    const auto grid = write_doc("base.json", kBaseGrid);
    SUBCASE("reports the Tokyo measures") {
        const CliResult r = run_cli("coherence " + grid.string() + " --x 0.5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("a:") != std::string::npos);
        CHECK(r.output.find("(0.1, 0.2, 0.7)") != std::string::npos);
        CHECK(r.output.find("0.266667") != std::string::npos);
        CHECK(r.output.find("0.307692") != std::string::npos);
        CHECK(r.output.find("0.866667") != std::string::npos);
    }
    SUBCASE("p and q form") {
        const CliResult r = run_cli("coherence " + grid.string() + " --p 0.8 --q 0.4");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0.866667") != std::string::npos);
        CHECK(r.output.find("r:") != std::string::npos);
    }
    SUBCASE("maximally coherent set scores 1") {
        const auto max = write_doc("max.json",
                                   R"({"cells": 10, "intervals": [[1, 10], [1, 10]]})");
        const CliResult r = run_cli("coherence " + max.string() + " --x 0.37");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("coherence:      1\n") != std::string::npos);
    }
    SUBCASE("rejects anti-reliable parameters") {
        const CliResult r = run_cli("coherence " + grid.string() + " --p 0.4 --q 0.5");
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("requires p > q") != std::string::npos);
    }
    SUBCASE("zero expectation is reported as undefined") {
        const auto zero = write_doc(
            "zero.json", R"({"n": 2, "table": {"10": 0.5, "01": 0.5}})");
        const CliResult r = run_cli("coherence " + zero.string() + " --x 0.5");
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("coherence undefined") != std::string::npos);
    }
    SUBCASE("needs exactly one reliability form") {
        CHECK(run_cli("coherence " + grid.string()).exit_code != 0);
        CHECK(run_cli("coherence " + grid.string() + " --x 0.5 --p 0.8 --q 0.4")
                  .exit_code != 0);
        CHECK(run_cli("coherence " + grid.string() + " --p 0.8").exit_code != 0);
    }
    SUBCASE("byte-identical output across runs") {
        const std::string args = "coherence " + grid.string() + " --x 0.5";
        CHECK(run_cli(args).output == run_cli(args).output);
    }
    SUBCASE("json format carries the same values") {
        const CliResult r =
            run_cli("coherence " + grid.string() + " --x 0.5 --format json");
        CHECK(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.output);
        CHECK(doc["values"]["coherence"].get<double>() ==
              doctest::Approx(0.86666666666666667).epsilon(1e-12));
        CHECK(doc["inputs"][0]["digest"].is_string());
    }
}

TEST_CASE("order subcommand") {
    const auto base = write_doc("base.json", kBaseGrid);
    const auto alt_a = write_doc("alt_a.json", kAltAGrid);
    const auto alt_b = write_doc("alt_b.json", kAltBGrid);
    SUBCASE("base versus A") {
        const CliResult r = run_cli("order " + base.string() + " " + alt_a.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("second-more-coherent") != std::string::npos);
        CHECK(r.output.find("pair-criterion") != std::string::npos);
    }
    SUBCASE("base versus B") {
        const CliResult r = run_cli("order " + base.string() + " " + alt_b.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("incomparable") != std::string::npos);
    }
    SUBCASE("reflexive comparison") {
        const CliResult r = run_cli("order " + alt_a.string() + " " + alt_a.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("verdict:    equal") != std::string::npos);
    }
    SUBCASE("size mismatch fails") {
        const auto single =
            write_doc("single.json", R"({"cells": 10, "intervals": [[1, 5]]})");
        const CliResult r = run_cli("order " + base.string() + " " + single.string());
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("incomparable sizes") != std::string::npos);
    }
    SUBCASE("grid probe verdicts carry a warning") {
        const auto w3a = write_doc(
            "w3a.json",
            R"({"n": 3, "table": {"111": 0.2, "100": 0.1, "010": 0.1, "001": 0.0,
                                  "110": 0.0, "101": 0.0, "011": 0.0, "000": 0.6}})");
        const auto w3b = write_doc(
            "w3b.json",
            R"({"n": 3, "table": {"111": 0.4, "100": 0.1, "010": 0.1, "001": 0.0,
                                  "110": 0.0, "101": 0.0, "011": 0.0, "000": 0.4}})");
        const CliResult r = run_cli("order " + w3a.string() + " " + w3b.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("grid-probe") != std::string::npos);
        CHECK(r.output.find("warning") != std::string::npos);
        CHECK(r.output.find("evidence") != std::string::npos);
    }
}

TEST_CASE("expand subcommand") {
    const auto grid = write_doc("base.json", kBaseGrid);
    SUBCASE("Tokyo second report is rejected, exit still 0") {
        const CliResult r = run_cli("expand " + grid.string() + " --mode fixed --x 0.5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0.333333") != std::string::npos);
        CHECK(r.output.find("0.266667") != std::string::npos);
        CHECK(r.output.find("reject") != std::string::npos);
    }
    SUBCASE("coextensive expansion is accepted") {
        const auto co = write_doc("coext.json",
                                  R"({"n": 2, "table": {"11": 0.3, "00": 0.7}})");
        const CliResult r = run_cli("expand " + co.string() + " --mode fixed --x 0.9");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("accept") != std::string::npos);
    }
    SUBCASE("averaged mode reports quadrature values") {
        const auto co = write_doc("pair55.json",
                                  R"({"n": 2, "table": {"11": 0.5, "00": 0.5}})");
        const CliResult r = run_cli("expand " + co.string() + " --mode averaged");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0.693147") != std::string::npos);  // ln 2
        CHECK(r.output.find("0.785398") != std::string::npos);  // pi/4
        CHECK(r.output.find("accept") != std::string::npos);
    }
    SUBCASE("fixed mode needs --x") {
        const CliResult r = run_cli("expand " + grid.string() + " --mode fixed");
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("requires --x") != std::string::npos);
    }
    SUBCASE("threshold flag is reported") {
        const CliResult r =
            run_cli("expand " + grid.string() + " --mode fixed --x 0.5 --threshold 0.2");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("threshold_met:     yes") != std::string::npos);
    }
}

TEST_CASE("bn subcommand") {
    const auto net = write_doc("toy_net.json", kToyNet);
    SUBCASE("posterior with evidence") {
        const auto ev = write_doc("toy_ev.json", R"({"REPR": true})");
        const CliResult r = run_cli("bn " + net.string() + " --evidence " + ev.string() +
                                    " --query R");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0.666667") != std::string::npos);
    }
    SUBCASE("prior without evidence") {
        const CliResult r = run_cli("bn " + net.string() + " --query REPR");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("posterior:  0.6\n") != std::string::npos);
    }
    SUBCASE("impossible evidence exits nonzero") {
        const auto conj = write_doc("conj_net.json", R"({"nodes": [
            {"name": "A", "parents": [], "cpt": {"": 0.5}},
            {"name": "B", "parents": [], "cpt": {"": 0.5}},
            {"name": "C", "parents": ["A", "B"],
             "cpt": {"00": 0.0, "10": 0.0, "01": 0.0, "11": 1.0}}
        ]})");
        const auto ev = write_doc("conj_ev.json", R"({"C": true, "A": false})");
        const CliResult r =
            run_cli("bn " + conj.string() + " --evidence " + ev.string() + " --query B");
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("impossible evidence") != std::string::npos);
    }
    SUBCASE("d-separation on a figure document") {
        const auto fig = write_doc("fig1.json", R"({
            "figure": "coherence",
            "distribution": {"cells": 100, "intervals": [[41, 60], [51, 70]]},
            "sources": [{"p": 0.8, "q": 0.4}]
        })");
        const CliResult r =
            run_cli("bn " + fig.string() + " --d-sep \"REPR1 | R2,REPR2 | R1\"");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("d_separated:  yes") != std::string::npos);
        const CliResult open =
            run_cli("bn " + fig.string() + " --d-sep \"R1 | R2 | C\"");
        CHECK(open.exit_code == 0);
        CHECK(open.output.find("d_separated:  no") != std::string::npos);
    }
    SUBCASE("figure read-offs") {
        const auto fig1 = write_doc("fig1.json", R"({
            "figure": "coherence",
            "distribution": {"cells": 100, "intervals": [[41, 60], [51, 70]]},
            "sources": [{"p": 0.8, "q": 0.4}]
        })");
        const CliResult r1 = run_cli("bn " + fig1.string());
        CHECK(r1.exit_code == 0);
        CHECK(r1.output.find("0.866667") != std::string::npos);
        const auto fig2 = write_doc("fig2.json", R"({
            "figure": "expansion",
            "distribution": {"cells": 100, "intervals": [[41, 60], [51, 70]]},
            "sources": [{"p": 0.8, "q": 0.4}]
        })");
        const CliResult r2 = run_cli("bn " + fig2.string());
        CHECK(r2.exit_code == 0);
        CHECK(r2.output.find("0.333333") != std::string::npos);
        CHECK(r2.output.find("reject") != std::string::npos);
    }
    SUBCASE("relaxed figures warn that closed forms are unavailable") {
        const auto fig = write_doc("fig_relaxed.json", R"({
            "figure": "coherence",
            "distribution": {"cells": 100, "intervals": [[41, 60], [51, 70]]},
            "sources": [{"p": 0.8, "q": 0.4}, {"p": 0.9, "q": 0.2}]
        })");
        const CliResult r = run_cli("bn " + fig.string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("relaxations active") != std::string::npos);
    }
    SUBCASE("plain network without a task fails") {
        const CliResult r = run_cli("bn " + net.string());
        CHECK(r.exit_code != 0);
        CHECK(r.output.find("nothing to compute") != std::string::npos);
    }
}

TEST_SUITE_END();
