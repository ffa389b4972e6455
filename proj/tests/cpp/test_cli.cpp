#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(PARAX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::path("cli_test") / tag;
    fs::remove_all(dir);
    return dir;
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

std::string read_all(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("uniqueness finds the distinguished family point") {
    const fs::path dir = fresh_dir("uniq");
    CHECK(run("--out " + dir.string() + " uniqueness") == 0);
    const json report = read_json(dir / "uniqueness.json");
    CHECK(report["argmin_at_expected"].get<bool>());
    const json& best = report["argmin"];
    CHECK(best["alpha"].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(best["beta"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report["max_unitarity_defect"].get<double>() < 1e-12);
}

TEST_CASE("uniqueness exits nonzero when the window misses the point") {
    const fs::path dir = fresh_dir("uniq_miss");
    CHECK(run("--out " + dir.string() +
              " uniqueness --alpha-min 0 --alpha-max 0.2 --beta-min 0.5 --beta-max 0.7") == 1);
    // The report is still written for inspection.
    CHECK(fs::exists(dir / "uniqueness.json"));
    // A backwards window is a usage error, not a tolerance breach.
    CHECK(run("--out " + dir.string() + " uniqueness --alpha-min 2 --alpha-max 1") == 2);
}

TEST_CASE("modes reports norms and writes envelopes") {
    const fs::path dir = fresh_dir("modes");
    CHECK(run("--out " + dir.string() + " modes hg:0,0:1:1") == 0);
    const json report = read_json(dir / "modes.json");
    CHECK(report["norms"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fs::exists(dir / "mode_hg_0_0_1_1.csv"));

    // Opposite-vortex pair: unit norms, orthogonal off-diagonal.
    CHECK(run("--out " + dir.string() + " modes lg:1,0:1:1 lg:-1,0:1:1") == 0);
    const json gram = read_json(dir / "modes.json");
    CHECK(gram["gram_real"][0][1].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(gram["gram_imag"][0][1].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(gram["gram_real"][1][1].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(run("--out " + dir.string() + " modes hg:0:1:1") == 2);   // malformed indices
    CHECK(run("--out " + dir.string() + " modes hg:0,0:1:0") == 2); // bad carrier
    // A Gram matrix across different carriers is undefined.
    CHECK(run("--out " + dir.string() + " modes hg:0,0:1:1 hg:0,0:1:2") == 2);
}

TEST_CASE("maps sweep emits the defect report schema") {
    const fs::path dir = fresh_dir("maps");
    CHECK(run("--out " + dir.string() + " maps ip --k 1.0 --q-max 0.3") == 0);
    const json report = read_json(dir / "map_ip.json");
    CHECK(report["map"].get<std::string>() == "initially_paraxial");
    CHECK(report["k"].get<double>() == doctest::Approx(1.0));
    CHECK(report["q_max"].get<double>() == doctest::Approx(0.3));
    CHECK(report["defect"].get<double>() == doctest::Approx(0.042093791444780426).epsilon(1e-12));
    REQUIRE(report["weight_samples"].is_array());
    CHECK(report["weight_samples"].size() == 200);
    CHECK(report["weight_samples"][0].contains("q"));
    CHECK(report["weight_samples"][0].contains("weight"));

    CHECK(run("--out " + dir.string() + " maps bogus") == 2);
}

TEST_CASE("maps sweep flags monochromatic domain violations") {
    const fs::path dir = fresh_dir("maps_mc");
    CHECK(run("--out " + dir.string() + " maps mc --k 1.0 --q-max 1.2") == 0);
    const json report = read_json(dir / "map_mc.json");
    CHECK(report["any_domain_error"].get<bool>());
    bool saw_flag = false;
    for (const json& sample : report["weight_samples"]) {
        if (sample.value("domain_error", false)) {
            saw_flag = true;
            CHECK(sample["q"].get<double>() >= 1.0);
        }
    }
    CHECK(saw_flag);
}

TEST_CASE("unitarity passes for the henochromatic map and fails for ip") {
    const fs::path dir = fresh_dir("unit");
    CHECK(run("--out " + dir.string() + " --seed 7 unitarity hc --pairs 4") == 0);
    const json report = read_json(dir / "unitarity_hc.json");
    CHECK(report["proportionality_spread"].get<double>() < 1e-10);
    CHECK(report["samples"].size() == 4);

    CHECK(run("--out " + dir.string() + " --seed 7 --set grid.n=32 unitarity ip --pairs 2") == 1);
    // The paraxial map has no quantum product at all.
    CHECK(run("--out " + dir.string() + " unitarity pa") == 2);
}

TEST_CASE("same seed gives byte-identical output, different seed different draws") {
    const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b"), c = fresh_dir("det_c");
    CHECK(run("--out " + a.string() + " --seed 42 unitarity hc --pairs 3") == 0);
    CHECK(run("--out " + b.string() + " --seed 42 unitarity hc --pairs 3") == 0);
    CHECK(run("--out " + c.string() + " --seed 43 unitarity hc --pairs 3") == 0);
    const std::string ja = read_all(a / "unitarity_hc.json");
    CHECK(ja == read_all(b / "unitarity_hc.json"));
    CHECK(ja != read_all(c / "unitarity_hc.json"));
}

TEST_CASE("roundtrip command verifies completeness") {
    const fs::path dir = fresh_dir("round");
    CHECK(run("--out " + dir.string() + " --seed 11 --set grid.n=32 roundtrip") == 0);
    const json report = read_json(dir / "roundtrip.json");
    CHECK(report["max_relative_error"].get<double>() < 1e-10);
    CHECK(report["per_carrier"].size() == 8);
}

TEST_CASE("pulse command reports the expansion discrepancy") {
    const fs::path dir = fresh_dir("pulse");
    CHECK(run("--out " + dir.string() + " pulse --k0 40 --sigma 0.04 --stations 11") == 0);
    const json report = read_json(dir / "pulse.json");
    CHECK(report["null_plane_residual"].get<double>() < 1e-13);
    CHECK(report["k0"].get<double>() == doctest::Approx(40.0));
    REQUIRE(report["discrepancy_curve"].is_array());
    CHECK(report["discrepancy_curve"].size() == 11);
    CHECK(report["discrepancy_curve"][0].contains("u"));
    CHECK(report["discrepancy_curve"][0].contains("value"));
    CHECK(fs::exists(dir / "pulse_discrepancy.csv"));

    // Wideband request violates the narrowband precondition.
    CHECK(run("--out " + dir.string() + " pulse --k0 1 --sigma 0.5") == 2);
}

TEST_CASE("synth writes station planes and rejects undomained spectra") {
    const fs::path dir = fresh_dir("synth");
    CHECK(run("--out " + dir.string() + " --set grid.n=32 synth hg:1,0:1:5 --map hc"
              " --z -1 0 1 --t 0") == 0);
    const json manifest = read_json(dir / "synth_manifest.json");
    CHECK(manifest["planes"].size() == 3);
    for (const json& plane : manifest["planes"])
        CHECK(fs::exists(dir / plane["file"].get<std::string>()));

    // A tight waist at small carrier spills past the monochromatic domain.
    CHECK(run("--out " + dir.string() + " --set grid.n=32 synth hg:0,0:0.5:0.8 --map mc") == 2);
}

TEST_CASE("config file and overrides") {
    const fs::path dir = fresh_dir("config");
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.json";
    {
        std::ofstream out(cfg);
        out << R"({"grid": {"n": 32}, "seed": 5, "output_dir": ")" << (dir / "out").string()
            << R"("})";
    }
    CHECK(run("--config " + cfg.string() + " modes hg:0,0:1:1") == 0);
    const json report = read_json(dir / "out" / "modes.json");
    CHECK(report["config"]["grid"]["n"].get<int>() == 32);
    CHECK(report["config"]["seed"].get<int>() == 5);

    // --set overrides the file; flags override both.
    CHECK(run("--config " + cfg.string() + " --set grid.n=16 --seed 9 --out " +
              (dir / "out2").string() + " modes hg:0,0:1:1") == 0);
    const json over = read_json(dir / "out2" / "modes.json");
    CHECK(over["config"]["grid"]["n"].get<int>() == 16);
    CHECK(over["config"]["seed"].get<int>() == 9);

    CHECK(run("--config " + (dir / "missing.json").string() + " modes hg:0,0:1:1") == 2);
    CHECK(run("--out " + dir.string() + " --set grid.n modes hg:0,0:1:1") == 2);
    CHECK(run("--out " + dir.string() + " --set grid.n=7 modes hg:0,0:1:1") == 2);
}

TEST_CASE("bad invocations are usage errors") {
    CHECK(run("bogus") == 2);
    CHECK(run("") == 2);       // a subcommand is required
    CHECK(run("modes") == 2);  // the mode argument is required
}
