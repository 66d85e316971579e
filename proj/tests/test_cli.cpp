#include "doctest.h"

#include "hetbo/csv.hpp"
#include "hetbo/dataset.hpp"
#include "hetbo/objectives.hpp"
#include "hetbo/random.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace hetbo;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkRoot = fs::temp_directory_path() / "hetbo_cli_suite";

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = kWorkRoot / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct CliRun {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli_output.log";
    const std::string command =
        std::string(HETBO_BENCH_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    run.output = buffer.str();
    return run;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::vector<std::string> lines;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    return cells;
}

fs::path write_pool(const fs::path& dir, int count, std::uint64_t seed) {
    RandomSource rng(seed);
    const Dataset pool = make_synthetic_soil_pool(count, rng);
    const fs::path path = dir / "pool.csv";
    write_xy_csv(path.string(), pool, {"bulk_density", "phosphorus_fraction"});
    return path;
}

} // namespace

TEST_CASE("make-soil writes a parseable deterministic pool") {
    const fs::path dir = fresh_dir("make_soil");
    const fs::path out_a = dir / "a.csv";
    const fs::path out_b = dir / "b.csv";

    CHECK(run_cli("make-soil --out " + out_a.string() + " --count 120 --seed 3", dir).exit_code ==
          0);
    CHECK(run_cli("make-soil --out " + out_b.string() + " --count 120 --seed 3", dir).exit_code ==
          0);

    const Dataset pool = read_xy_csv(out_a.string());
    CHECK(pool.size() == 120);
    CHECK(pool.dimension() == 1);
    CHECK(read_file(out_a) == read_file(out_b));

    // A parent directory that does not exist is a configuration error.
    const CliRun bad =
        run_cli("make-soil --out " + (dir / "missing" / "deep" / "c.csv").string(), dir);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("benchmark campaigns write coherent trajectories, summary, and manifest") {
    const fs::path dir = fresh_dir("bench_small");
    const fs::path out = dir / "run";
    const CliRun run = run_cli("benchmark --problem sin1d --method gp:ei --seeds 2 --budget 2 "
                               "--out " + out.string(),
                               dir);
    REQUIRE(run.exit_code == 0);

    const std::vector<std::string> lines = read_lines(out / "trajectories.csv");
    REQUIRE(lines.size() == 1 + 2 * (9 + 2)); // header + 2 seeds x (init + budget)
    CHECK(lines[0] == "method,seed,iteration,x0,observed_t,f_score,best_so_far_f");

    // Every numeric cell parses and is finite; iterations count up per seed.
    std::map<std::string, std::vector<double>> final_best; // method -> per-seed final
    int expected_iteration = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 7);
        CHECK(cells[0] == "gp:ei");
        const int iteration = std::stoi(cells[2]);
        CHECK(iteration == expected_iteration);
        expected_iteration = (expected_iteration + 1) % 11;
        for (int c = 3; c < 7; ++c) {
            const double value = std::strtod(cells[c].c_str(), nullptr);
            CHECK(std::isfinite(value));
        }
        if (iteration == 10)
            final_best[cells[0]].push_back(std::strtod(cells[6].c_str(), nullptr));
    }
    REQUIRE(final_best["gp:ei"].size() == 2);

    // The summary is recomputable from the trajectories (full precision).
    const std::vector<std::string> summary = read_lines(out / "summary.csv");
    REQUIRE(summary.size() == 2);
    CHECK(summary[0] == "method,mean_final_best_f,se_final_best_f");
    const std::vector<std::string> cells = split_csv(summary[1]);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == "gp:ei");
    const double mean = (final_best["gp:ei"][0] + final_best["gp:ei"][1]) / 2.0;
    double var = 0.0;
    for (double v : final_best["gp:ei"]) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / 1.0) / std::sqrt(2.0);
    CHECK(std::strtod(cells[1].c_str(), nullptr) == mean);
    CHECK(std::strtod(cells[2].c_str(), nullptr) == se);

    // Manifest and plot exist and carry the run's identity.
    const std::string manifest = read_file(out / "manifest.json");
    CHECK(manifest.find("\"tool_version\": \"0.1.0\"") != std::string::npos);
    CHECK(manifest.find("\"command\": \"benchmark\"") != std::string::npos);
    CHECK(manifest.find("\"problem\": \"sin1d\"") != std::string::npos);
    const std::string svg = read_file(out / "trajectory.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("a zero-budget benchmark records only the initial design") {
    const fs::path dir = fresh_dir("bench_zero");
    const fs::path out = dir / "run";
    const CliRun run = run_cli("benchmark --problem sin1d --method gp:ei --seeds 1 --budget 0 "
                               "--out " + out.string(),
                               dir);
    REQUIRE(run.exit_code == 0);
    CHECK(read_lines(out / "trajectories.csv").size() == 1 + 9);
}

TEST_CASE("benchmark reruns are byte-identical") {
    const fs::path dir = fresh_dir("bench_rerun");
    const std::string args = "benchmark --problem sin1d --method gp:ei --seeds 1 --budget 2 ";
    REQUIRE(run_cli(args + "--out " + (dir / "first").string(), dir).exit_code == 0);
    REQUIRE(run_cli(args + "--out " + (dir / "second").string(), dir).exit_code == 0);
    CHECK(read_file(dir / "first" / "trajectories.csv") ==
          read_file(dir / "second" / "trajectories.csv"));
    CHECK(read_file(dir / "first" / "summary.csv") == read_file(dir / "second" / "summary.csv"));
    CHECK(read_file(dir / "first" / "trajectory.svg") ==
          read_file(dir / "second" / "trajectory.svg"));
}

TEST_CASE("the soil benchmark runs off a pool file and hashes its input") {
    const fs::path dir = fresh_dir("bench_soil");
    const fs::path pool = write_pool(dir, 60, 7);
    const fs::path out = dir / "run";

    const CliRun run = run_cli("benchmark --problem soil --method gp:ei --seeds 1 --budget 3 "
                               "--init 6 --data " + pool.string() + " --out " + out.string(),
                               dir);
    REQUIRE(run.exit_code == 0);
    CHECK(read_lines(out / "trajectories.csv").size() == 1 + 6 + 3);
    const std::string manifest = read_file(out / "manifest.json");
    CHECK(manifest.find("\"data_hash\": \"fnv1a64:") != std::string::npos);

    // Budget is clamped to what the pool can still serve.
    const CliRun clamped =
        run_cli("benchmark --problem soil --method gp:ei --seeds 1 --budget 500 --init 55 "
                "--data " + pool.string() + " --out " + (dir / "clamped").string(),
                dir);
    REQUIRE(clamped.exit_code == 0);
    CHECK(read_lines(dir / "clamped" / "trajectories.csv").size() == 1 + 55 + 5);
}

TEST_CASE("configuration errors and missing data use distinct exit codes") {
    const fs::path dir = fresh_dir("exit_codes");

    // Unknown problem, malformed method, absent output parent: exit 2.
    CHECK(run_cli("benchmark --problem nope --out " + (dir / "a").string(), dir).exit_code == 2);
    CHECK(run_cli("benchmark --problem sin1d --method gp:nope --out " + (dir / "b").string(), dir)
              .exit_code == 2);
    CHECK(run_cli("benchmark --problem sin1d --seeds 0 --out " + (dir / "c").string(), dir)
              .exit_code == 2);
    CHECK(run_cli("benchmark --problem sin1d --out " + (dir / "no" / "such" / "parent").string(),
                  dir)
              .exit_code == 2);
    CHECK(run_cli("", dir).exit_code == 2);            // no subcommand
    CHECK(run_cli("--bogus-flag", dir).exit_code == 2); // unknown flag

    // Soil without a pool file names the missing flag and exits 3.
    const CliRun no_data =
        run_cli("benchmark --problem soil --out " + (dir / "d").string(), dir);
    CHECK(no_data.exit_code == 3);
    CHECK(no_data.output.find("--data") != std::string::npos);

    // Nonexistent and malformed data files are data errors, exit 3.
    CHECK(run_cli("fit-compare --data " + (dir / "ghost.csv").string() + " --out " +
                      (dir / "e").string(),
                  dir)
              .exit_code == 3);
    {
        std::ofstream bad(dir / "bad.csv");
        bad << "x,t\n1.0,2.0\noops,3.0\n";
    }
    CHECK(run_cli("fit-compare --data " + (dir / "bad.csv").string() + " --out " +
                      (dir / "f").string(),
                  dir)
              .exit_code == 3);

    CHECK(run_cli("--version", dir).exit_code == 0);
}

TEST_CASE("fit-compare writes per-split scores for both surrogates") {
    const fs::path dir = fresh_dir("fit_compare");
    const fs::path pool = write_pool(dir, 80, 11);
    const fs::path out = dir / "cmp";

    const CliRun run = run_cli("fit-compare --data " + pool.string() +
                                   " --splits 2 --seed 4 --out " + out.string(),
                               dir);
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.find("gp") != std::string::npos);
    CHECK(run.output.find("mlhgp") != std::string::npos);

    const std::vector<std::string> lines = read_lines(out / "nlpd.csv");
    REQUIRE(lines.size() == 1 + 2 * 2); // header + two models x two splits
    CHECK(lines[0] == "split,model,nlpd");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 3);
        CHECK((cells[1] == "gp" || cells[1] == "mlhgp"));
        CHECK(std::isfinite(std::strtod(cells[2].c_str(), nullptr)));
    }
}

TEST_CASE("the 1D fit demo exports data and uncertainty bands") {
    const fs::path dir = fresh_dir("demo_sin");
    const fs::path out = dir / "demo";
    REQUIRE(run_cli("demo-fit --problem sin1d --out " + out.string(), dir).exit_code == 0);

    CHECK(read_lines(out / "data.csv").size() == 1 + 60);

    const std::vector<std::string> band = read_lines(out / "fit_mlhgp.csv");
    REQUIRE(band.size() == 1 + 200);
    CHECK(band[0] == "x,mean,lower,upper");

    // Noise grows with x, so the fitted band must be wider at the right edge.
    const std::vector<std::string> first = split_csv(band[1]);
    const std::vector<std::string> last = split_csv(band.back());
    const double width_left = std::strtod(first[3].c_str(), nullptr) -
                              std::strtod(first[2].c_str(), nullptr);
    const double width_right =
        std::strtod(last[3].c_str(), nullptr) - std::strtod(last[2].c_str(), nullptr);
    CHECK(width_right > width_left);

    for (const char* name : {"scatter.svg", "fit_homoscedastic.svg", "fit_mlhgp.svg"})
        CHECK(read_file(out / name).find("<svg") != std::string::npos);
}

TEST_CASE("the 2D fit demo's reported score grid is the sum of its parts") {
    const fs::path dir = fresh_dir("demo_branin");
    const fs::path out = dir / "demo";
    REQUIRE(run_cli("demo-fit --problem branin --out " + out.string(), dir).exit_code == 0);

    const auto load_grid = [&](const std::string& name) {
        const std::vector<std::string> lines = read_lines(out / name);
        REQUIRE(lines.size() == 1 + 2500);
        CHECK(lines[0] == "x1,x2,value");
        std::vector<double> values;
        values.reserve(2500);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const std::vector<std::string> cells = split_csv(lines[i]);
            REQUIRE(cells.size() == 3);
            values.push_back(std::strtod(cells[2].c_str(), nullptr));
        }
        return values;
    };
    const std::vector<double> g = load_grid("g_grid.csv");
    const std::vector<double> s = load_grid("s_grid.csv");
    const std::vector<double> f = load_grid("f_grid.csv");
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == g[i] + s[i]);

    for (const char* name : {"g_surface.svg", "s_surface.svg", "f_surface.svg"})
        CHECK(read_file(out / name).find("<svg") != std::string::npos);

    // A demo pointed at a missing output parent fails as configuration.
    CHECK(run_cli("demo-fit --problem branin --out " + (dir / "no" / "such" / "dir").string(),
                  dir)
              .exit_code == 2);
}

TEST_CASE("a config file sets defaults that flags still override") {
    const fs::path dir = fresh_dir("config_file");
    const fs::path cfg = dir / "bench.ini";
    {
        std::ofstream out(cfg);
        out << "[benchmark]\n"
            << "problem=sin1d\n"
            << "method=gp:ei\n"
            << "seeds=1\n"
            << "budget=1\n"
            << "out=" << (dir / "from_config").string() << "\n";
    }
    REQUIRE(run_cli("--config " + cfg.string() + " benchmark", dir).exit_code == 0);
    CHECK(read_lines(dir / "from_config" / "trajectories.csv").size() == 1 + 10);

    // The command line wins over the file.
    REQUIRE(run_cli("--config " + cfg.string() + " benchmark --budget 2 --out " +
                        (dir / "overridden").string(),
                    dir)
                .exit_code == 0);
    CHECK(read_lines(dir / "overridden" / "trajectories.csv").size() == 1 + 11);
}
