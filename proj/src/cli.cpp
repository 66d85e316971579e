#include "hetbo/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hetbo/csv.hpp"
#include "hetbo/errors.hpp"
#include "hetbo/gp.hpp"
#include "hetbo/mlhgp.hpp"
#include "svg_plot.hpp"

namespace hetbo {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string num(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

/// FNV-1a 64-bit over the raw file bytes; stable fingerprint for manifests.
std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError("cannot open data file: " + path);
    std::uint64_t hash = 14695981039346656037ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 1099511628211ULL;
        }
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    out << content;
    if (!out.good()) throw Error("failed writing output file: " + path.string());
}

/// The output directory itself may be created, but its parent must already
/// exist — a missing parent almost always means a mistyped path.
void ensure_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw ConfigError("--out must not be empty");
    const fs::path path(out_dir);
    if (fs::exists(path)) {
        if (!fs::is_directory(path))
            throw ConfigError("--out exists and is not a directory: " + out_dir);
        return;
    }
    const fs::path parent = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    if (!fs::exists(parent))
        throw ConfigError("--out parent directory does not exist: " + parent.string());
    fs::create_directory(path);
}

void ensure_parent_exists(const std::string& file_path, const char* flag) {
    const fs::path parent = fs::path(file_path).parent_path();
    if (!parent.empty() && !fs::exists(parent))
        throw ConfigError(std::string(flag) + " parent directory does not exist: " +
                          parent.string());
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

std::vector<MethodSpec> default_methods() {
    return {MethodSpec{CampaignConfig::Surrogate::homoscedastic, AcquisitionKind::ei},
            MethodSpec{CampaignConfig::Surrogate::mlhgp, AcquisitionKind::anpei},
            MethodSpec{CampaignConfig::Surrogate::mlhgp, AcquisitionKind::het_aei}};
}

int default_budget(const std::string& problem) {
    if (problem == "branin") return 50;
    return 30;
}

int default_init(const std::string& problem) {
    if (problem == "soil") return 10;
    return 9;
}

std::vector<std::uint64_t> default_seeds() {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 10; ++i) seeds.push_back(i);
    return seeds;
}

json config_json(const BenchmarkOptions& opts) {
    json methods = json::array();
    for (const MethodSpec& m : opts.methods) methods.push_back(m.label());
    return json{{"problem", opts.problem},
                {"methods", methods},
                {"budget", opts.budget},
                {"init_design_size", opts.init_design_size},
                {"alpha", opts.alpha},
                {"em_iterations", opts.em_iterations},
                {"sample_count", opts.sample_count},
                {"data", opts.data_path},
                {"out", opts.out_dir}};
}

void write_manifest(const fs::path& out_dir, const std::string& command, json config,
                    const std::vector<std::uint64_t>& seeds, const std::string& data_hash,
                    const std::string& started_at) {
    json manifest{{"tool_version", kToolVersion},
                  {"command", command},
                  {"config", std::move(config)},
                  {"seeds", seeds},
                  {"data_hash", data_hash},
                  {"started_at", started_at},
                  {"finished_at", timestamp_utc()}};
    write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string trajectories_csv(const std::vector<std::pair<MethodSpec, ReplicateAggregate>>& runs,
                             const std::vector<std::uint64_t>& seeds, int dimension) {
    std::string csv = "method,seed,iteration";
    for (int d = 0; d < dimension; ++d) csv += ",x" + std::to_string(d);
    csv += ",observed_t,f_score,best_so_far_f\n";
    for (const auto& [method, aggregate] : runs) {
        const std::string label = method.label();
        for (std::size_t s = 0; s < aggregate.records.size(); ++s) {
            for (const CampaignRow& row : aggregate.records[s].rows) {
                csv += label + "," + std::to_string(seeds[s]) + "," +
                       std::to_string(row.iteration);
                for (int d = 0; d < dimension; ++d) csv += "," + num(row.x[d]);
                csv += "," + num(row.observed) + "," + num(row.score) + "," +
                       num(row.best_score) + "\n";
            }
        }
    }
    return csv;
}

std::string summary_csv(const std::vector<std::pair<MethodSpec, ReplicateAggregate>>& runs) {
    std::string csv = "method,mean_final_best_f,se_final_best_f\n";
    for (const auto& [method, aggregate] : runs) {
        const Eigen::Index last = aggregate.mean_best.size() - 1;
        csv += method.label() + "," + num(aggregate.mean_best[last]) + "," +
               num(aggregate.standard_error[last]) + "\n";
    }
    return csv;
}

std::string trajectory_svg(const std::string& problem,
                           const std::vector<std::pair<MethodSpec, ReplicateAggregate>>& runs) {
    LinePlot plot;
    plot.title = problem + " benchmark: mean best-so-far score";
    plot.x_label = "evaluation";
    plot.y_label = "best-so-far f";
    for (const auto& [method, aggregate] : runs) {
        PlotSeries series;
        series.label = method.label();
        const Eigen::Index n = aggregate.mean_best.size();
        for (Eigen::Index i = 0; i < n; ++i) series.x.push_back(static_cast<double>(i));
        series.y = to_std(aggregate.mean_best);
        series.y_err = to_std(aggregate.standard_error);
        plot.series.push_back(std::move(series));
    }
    return render_line_plot(plot);
}

} // namespace

std::string MethodSpec::label() const {
    std::string text =
        surrogate == CampaignConfig::Surrogate::homoscedastic ? "gp:" : "mlhgp:";
    switch (acquisition) {
        case AcquisitionKind::ei: text += "ei"; break;
        case AcquisitionKind::aei: text += "aei"; break;
        case AcquisitionKind::het_aei: text += "het-aei"; break;
        case AcquisitionKind::anpei: text += "anpei"; break;
    }
    return text;
}

MethodSpec parse_method(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--method expects surrogate:acquisition, got '" + text + "'");
    const std::string surrogate = text.substr(0, colon);
    const std::string acquisition = text.substr(colon + 1);

    MethodSpec method;
    if (surrogate == "gp")
        method.surrogate = CampaignConfig::Surrogate::homoscedastic;
    else if (surrogate == "mlhgp")
        method.surrogate = CampaignConfig::Surrogate::mlhgp;
    else
        throw ConfigError("unknown surrogate '" + surrogate + "' (expected gp or mlhgp)");

    if (acquisition == "ei")
        method.acquisition = AcquisitionKind::ei;
    else if (acquisition == "aei")
        method.acquisition = AcquisitionKind::aei;
    else if (acquisition == "het-aei")
        method.acquisition = AcquisitionKind::het_aei;
    else if (acquisition == "anpei")
        method.acquisition = AcquisitionKind::anpei;
    else
        throw ConfigError("unknown acquisition '" + acquisition +
                          "' (expected ei, aei, het-aei, or anpei)");
    return method;
}

int cmd_benchmark(const BenchmarkOptions& options) {
    return guarded([&]() -> int {
        BenchmarkOptions opts = options;
        if (opts.problem != "sin1d" && opts.problem != "branin" && opts.problem != "soil")
            throw ConfigError("unknown --problem '" + opts.problem +
                              "' (expected sin1d, branin, or soil)");
        if (opts.methods.empty()) opts.methods = default_methods();
        if (opts.seeds.empty()) opts.seeds = default_seeds();
        if (opts.budget < 0) opts.budget = default_budget(opts.problem);
        if (opts.init_design_size < 0) opts.init_design_size = default_init(opts.problem);
        if (opts.problem == "soil" && opts.data_path.empty())
            throw FileNotFoundError("the soil benchmark requires --data <pool.csv>");

        ensure_out_dir(opts.out_dir);
        const std::string started_at = timestamp_utc();

        std::string data_hash;
        Dataset pool;
        if (opts.problem == "soil") {
            data_hash = fnv1a64_file(opts.data_path);
            pool = read_xy_csv(opts.data_path);
            if (pool.size() < opts.init_design_size + 1)
                throw InsufficientDataError("pool smaller than the initial design");
            // Pool-limited: never request more evaluations than unconsumed rows.
            opts.budget =
                std::min<int>(opts.budget, static_cast<int>(pool.size()) - opts.init_design_size);
        }

        std::vector<std::pair<MethodSpec, ReplicateAggregate>> runs;
        int dimension = 1;
        for (const MethodSpec& method : opts.methods) {
            CampaignConfig config;
            config.surrogate = method.surrogate;
            config.acquisition.kind = method.acquisition;
            config.acquisition.alpha = opts.alpha;
            config.budget = opts.budget;
            config.init_design_size = opts.init_design_size;
            config.em_iterations = opts.em_iterations;
            config.sample_count = opts.sample_count;

            ReplicateAggregate aggregate;
            if (opts.problem == "soil") {
                const int init_count = opts.init_design_size;
                aggregate = run_replicates(
                    config, opts.seeds, TabularObjectiveFactory([&pool, init_count](std::uint64_t seed) {
                        RandomSource rng(seed);
                        return tabular_from_pool(pool, init_count, rng);
                    }));
                dimension = static_cast<int>(pool.dimension());
            } else if (opts.problem == "branin") {
                aggregate = run_replicates(config, opts.seeds, NoisyObjectiveFactory([](std::uint64_t) {
                                               return branin_problem();
                                           }));
                dimension = 2;
            } else {
                aggregate = run_replicates(config, opts.seeds, NoisyObjectiveFactory([](std::uint64_t) {
                                               return sin_problem();
                                           }));
                dimension = 1;
            }
            const Eigen::Index last = aggregate.mean_best.size() - 1;
            std::printf("%-14s final best-so-far f: mean=%.6f se=%.6f\n",
                        method.label().c_str(), aggregate.mean_best[last],
                        aggregate.standard_error[last]);
            runs.emplace_back(method, std::move(aggregate));
        }

        const fs::path out_dir(opts.out_dir);
        write_text_file(out_dir / "trajectories.csv",
                        trajectories_csv(runs, opts.seeds, dimension));
        write_text_file(out_dir / "summary.csv", summary_csv(runs));
        write_text_file(out_dir / "trajectory.svg", trajectory_svg(opts.problem, runs));
        write_manifest(out_dir, "benchmark", config_json(opts), opts.seeds, data_hash,
                       started_at);
        return 0;
    });
}

int cmd_fit_compare(const FitCompareOptions& options) {
    return guarded([&]() -> int {
        if (options.splits < 1) throw ConfigError("--splits must be at least 1");
        ensure_out_dir(options.out_dir);
        const std::string started_at = timestamp_utc();
        const std::string data_hash = fnv1a64_file(options.data_path);
        const Dataset full = read_xy_csv(options.data_path);

        const int n = static_cast<int>(full.size());
        const int n_test = std::max(1, n / 5);
        const int n_train = n - n_test;
        if (n_train < 2) throw InsufficientDataError("dataset too small for an 80/20 split");

        RandomSource rng(options.seed);
        std::string csv = "split,model,nlpd\n";
        Eigen::VectorXd gp_scores(options.splits);
        Eigen::VectorXd het_scores(options.splits);
        for (int split = 0; split < options.splits; ++split) {
            const std::vector<int> permutation = rng.sample_indices(n, n);
            Dataset train;
            train.inputs.resize(n_train, full.dimension());
            train.targets.resize(n_train);
            Dataset test;
            test.inputs.resize(n_test, full.dimension());
            test.targets.resize(n_test);
            for (int i = 0; i < n_train; ++i) {
                train.inputs.row(i) = full.inputs.row(permutation[i]);
                train.targets[i] = full.targets[permutation[i]];
            }
            for (int i = 0; i < n_test; ++i) {
                test.inputs.row(i) = full.inputs.row(permutation[n_train + i]);
                test.targets[i] = full.targets[permutation[n_train + i]];
            }

            const GPModel gp = fit_gp(train);
            gp_scores[split] = nlpd(gp.predict(test.inputs), test.targets);
            const HetGPModel het = fit_mlhgp(train, 10, 100, rng);
            het_scores[split] = nlpd(predict_het(het, test.inputs), test.targets);

            csv += std::to_string(split) + ",gp," + num(gp_scores[split]) + "\n";
            csv += std::to_string(split) + ",mlhgp," + num(het_scores[split]) + "\n";
        }

        const auto report = [&](const char* label, const Eigen::VectorXd& scores) {
            const double mean = scores.mean();
            double se = 0.0;
            if (scores.size() > 1) {
                const double var =
                    (scores.array() - mean).square().sum() / (scores.size() - 1.0);
                se = std::sqrt(var / scores.size());
            }
            std::printf("%-6s nlpd mean=%.6f se=%.6f\n", label, mean, se);
        };
        report("gp", gp_scores);
        report("mlhgp", het_scores);

        const fs::path out_dir(options.out_dir);
        write_text_file(out_dir / "nlpd.csv", csv);
        write_manifest(out_dir, "fit-compare",
                       json{{"data", options.data_path},
                            {"splits", options.splits},
                            {"seed", options.seed},
                            {"out", options.out_dir}},
                       {options.seed}, data_hash, started_at);
        return 0;
    });
}

namespace {

void demo_fit_sin1d(const fs::path& out_dir) {
    const NoisyObjective objective = sin_problem();
    RandomSource rng(17);
    const Dataset data = sample_noisy_dataset(objective, 60, rng);
    const GPModel gp = fit_gp(data);
    const HetGPModel het = fit_mlhgp(data, 10, 100, rng);

    const int grid_size = 200;
    Eigen::MatrixXd grid(grid_size, 1);
    grid.col(0) = Eigen::VectorXd::LinSpaced(grid_size, objective.domain.lower[0],
                                             objective.domain.upper[0]);
    const PredictiveDistribution gp_pred = gp.predict(grid);
    const PredictiveDistribution het_pred = predict_het(het, grid);

    std::string data_csv = "x,observed_t\n";
    for (Eigen::Index i = 0; i < data.size(); ++i)
        data_csv += num(data.inputs(i, 0)) + "," + num(data.targets[i]) + "\n";
    write_text_file(out_dir / "data.csv", data_csv);

    const auto band_csv = [&](const PredictiveDistribution& pred) {
        std::string csv = "x,mean,lower,upper\n";
        for (int i = 0; i < grid_size; ++i) {
            const double spread = 2.0 * std::sqrt(pred.total_variance[i]);
            csv += num(grid(i, 0)) + "," + num(pred.mean[i]) + "," +
                   num(pred.mean[i] - spread) + "," + num(pred.mean[i] + spread) + "\n";
        }
        return csv;
    };
    write_text_file(out_dir / "fit_homoscedastic.csv", band_csv(gp_pred));
    write_text_file(out_dir / "fit_mlhgp.csv", band_csv(het_pred));

    PlotSeries scatter;
    scatter.label = "observations";
    scatter.points_only = true;
    scatter.color = "#555555";
    scatter.x = to_std(data.inputs.col(0));
    scatter.y = to_std(data.targets);

    LinePlot scatter_plot;
    scatter_plot.title = "noisy observations";
    scatter_plot.x_label = "x";
    scatter_plot.y_label = "t";
    scatter_plot.series = {scatter};
    write_text_file(out_dir / "scatter.svg", render_line_plot(scatter_plot));

    const auto band_svg = [&](const PredictiveDistribution& pred, const std::string& title) {
        PlotSeries band;
        band.label = "predictive mean ± 2σ";
        band.x = to_std(grid.col(0));
        band.y = to_std(pred.mean);
        for (int i = 0; i < grid_size; ++i) {
            const double spread = 2.0 * std::sqrt(pred.total_variance[i]);
            band.band_low.push_back(pred.mean[i] - spread);
            band.band_high.push_back(pred.mean[i] + spread);
        }
        LinePlot plot;
        plot.title = title;
        plot.x_label = "x";
        plot.y_label = "t";
        plot.series = {band, scatter};
        return render_line_plot(plot);
    };
    write_text_file(out_dir / "fit_homoscedastic.svg",
                    band_svg(gp_pred, "homoscedastic GP fit"));
    write_text_file(out_dir / "fit_mlhgp.svg", band_svg(het_pred, "heteroscedastic GP fit"));
}

void demo_fit_branin(const fs::path& out_dir) {
    const NoisyObjective objective = branin_problem();
    const int grid_size = 50;
    const Eigen::VectorXd x1 = Eigen::VectorXd::LinSpaced(grid_size, objective.domain.lower[0],
                                                          objective.domain.upper[0]);
    const Eigen::VectorXd x2 = Eigen::VectorXd::LinSpaced(grid_size, objective.domain.lower[1],
                                                          objective.domain.upper[1]);

    Eigen::MatrixXd g_grid(grid_size, grid_size);
    Eigen::MatrixXd s_grid(grid_size, grid_size);
    Eigen::VectorXd point(2);
    for (int i = 0; i < grid_size; ++i) {      // rows follow x2
        for (int j = 0; j < grid_size; ++j) {  // columns follow x1
            point << x1[j], x2[i];
            g_grid(i, j) = objective.g(point);
            s_grid(i, j) = objective.s(point);
        }
    }
    const Eigen::MatrixXd f_grid = g_grid + s_grid;

    const auto long_csv = [&](const Eigen::MatrixXd& values) {
        std::string csv = "x1,x2,value\n";
        for (int j = 0; j < grid_size; ++j)
            for (int i = 0; i < grid_size; ++i)
                csv += num(x1[j]) + "," + num(x2[i]) + "," + num(values(i, j)) + "\n";
        return csv;
    };
    write_text_file(out_dir / "g_grid.csv", long_csv(g_grid));
    write_text_file(out_dir / "s_grid.csv", long_csv(s_grid));
    write_text_file(out_dir / "f_grid.csv", long_csv(f_grid));

    const auto heat_svg = [&](const Eigen::MatrixXd& values, const std::string& title) {
        HeatmapPlot plot;
        plot.title = title;
        plot.x_label = "x1";
        plot.y_label = "x2";
        plot.values = values;
        plot.x_min = objective.domain.lower[0];
        plot.x_max = objective.domain.upper[0];
        plot.y_min = objective.domain.lower[1];
        plot.y_max = objective.domain.upper[1];
        return render_heatmap(plot);
    };
    write_text_file(out_dir / "g_surface.svg", heat_svg(g_grid, "objective g"));
    write_text_file(out_dir / "s_surface.svg", heat_svg(s_grid, "noise rate s"));
    write_text_file(out_dir / "f_surface.svg", heat_svg(f_grid, "score f = g + s"));
}

} // namespace

int cmd_demo_fit(const DemoFitOptions& options) {
    return guarded([&]() -> int {
        if (options.problem != "sin1d" && options.problem != "branin")
            throw ConfigError("unknown --problem '" + options.problem +
                              "' (expected sin1d or branin)");
        ensure_out_dir(options.out_dir);
        const std::string started_at = timestamp_utc();
        const fs::path out_dir(options.out_dir);
        if (options.problem == "sin1d")
            demo_fit_sin1d(out_dir);
        else
            demo_fit_branin(out_dir);
        write_manifest(out_dir, "demo-fit",
                       json{{"problem", options.problem}, {"out", options.out_dir}}, {}, "",
                       started_at);
        return 0;
    });
}

int cmd_make_soil(const MakeSoilOptions& options) {
    return guarded([&]() -> int {
        if (options.out_path.empty()) throw ConfigError("--out must not be empty");
        if (options.count < 2) throw ConfigError("--count must be at least 2");
        ensure_parent_exists(options.out_path, "--out");
        RandomSource rng(options.seed);
        const Dataset pool = make_synthetic_soil_pool(options.count, rng);
        write_xy_csv(options.out_path, pool, {"bulk_density", "phosphorus_fraction"});
        std::printf("wrote %d rows to %s\n", options.count, options.out_path.c_str());
        return 0;
    });
}

namespace {

std::vector<std::uint64_t> resolve_seeds(int seed_count, const std::string& seed_list) {
    if (!seed_list.empty()) {
        std::vector<std::uint64_t> seeds;
        std::stringstream stream(seed_list);
        std::string token;
        while (std::getline(stream, token, ',')) {
            try {
                std::size_t consumed = 0;
                const std::uint64_t seed = std::stoull(token, &consumed);
                if (consumed != token.size()) throw std::invalid_argument(token);
                seeds.push_back(seed);
            } catch (const std::exception&) {
                throw ConfigError("--seed-list has a non-integer entry: '" + token + "'");
            }
        }
        if (seeds.empty()) throw ConfigError("--seed-list is empty");
        return seeds;
    }
    if (seed_count == 0) throw ConfigError("--seeds must be at least 1");
    if (seed_count > 0) {
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < seed_count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
        return seeds;
    }
    return {};
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"heteroscedastic Bayesian optimisation benchmarks"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "flat key=value config file; flags override it");
    app.require_subcommand(0, 1);

    BenchmarkOptions bench;
    std::vector<std::string> method_texts;
    int bench_seed_count = -1;
    std::string bench_seed_list;
    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "run multi-seed optimisation campaigns");
    bench_cmd->add_option("--problem", bench.problem, "sin1d, branin, or soil")->required();
    bench_cmd->add_option("--method", method_texts,
                          "surrogate:acquisition (repeatable); default gp:ei mlhgp:anpei "
                          "mlhgp:het-aei");
    CLI::Option* seeds_opt =
        bench_cmd->add_option("--seeds", bench_seed_count, "run seeds 0..N-1 (default 10)");
    bench_cmd->add_option("--seed-list", bench_seed_list, "explicit comma-separated seeds")
        ->excludes(seeds_opt);
    bench_cmd->add_option("--budget", bench.budget,
                          "evaluations after the initial design (-1: problem default)");
    bench_cmd->add_option("--init", bench.init_design_size,
                          "initial design size (-1: problem default)");
    bench_cmd->add_option("--alpha", bench.alpha, "ANPEI trade-off weight in [0, 1]");
    bench_cmd->add_option("--em-iters", bench.em_iterations,
                          "EM rounds for the heteroscedastic surrogate");
    bench_cmd->add_option("--sample-count", bench.sample_count,
                          "posterior samples per empirical noise estimate");
    bench_cmd->add_option("--data", bench.data_path, "pool CSV (required for soil)");
    bench_cmd->add_option("--out", bench.out_dir, "output directory");

    FitCompareOptions fit;
    CLI::App* fit_cmd = app.add_subcommand(
        "fit-compare", "NLPD of homoscedastic vs heteroscedastic fits on held-out splits");
    fit_cmd->add_option("--data", fit.data_path, "dataset CSV")->required();
    fit_cmd->add_option("--splits", fit.splits, "number of 80/20 train/test splits");
    fit_cmd->add_option("--seed", fit.seed, "split-shuffle seed");
    fit_cmd->add_option("--out", fit.out_dir, "output directory");

    DemoFitOptions demo;
    CLI::App* demo_cmd =
        app.add_subcommand("demo-fit", "fit both surrogates on a fixed sample and plot");
    demo_cmd->add_option("--problem", demo.problem, "sin1d or branin")->required();
    demo_cmd->add_option("--out", demo.out_dir, "output directory");

    MakeSoilOptions soil;
    CLI::App* soil_cmd =
        app.add_subcommand("make-soil", "generate a synthetic heteroscedastic pool CSV");
    soil_cmd->add_option("--out", soil.out_path, "output CSV path")->required();
    soil_cmd->add_option("--count", soil.count, "number of pool rows");
    soil_cmd->add_option("--seed", soil.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bench_cmd->parsed()) {
            for (const std::string& text : method_texts)
                bench.methods.push_back(parse_method(text));
            bench.seeds = resolve_seeds(bench_seed_count, bench_seed_list);
            return cmd_benchmark(bench);
        }
        if (fit_cmd->parsed()) return cmd_fit_compare(fit);
        if (demo_cmd->parsed()) return cmd_demo_fit(demo);
        if (soil_cmd->parsed()) return cmd_make_soil(soil);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    std::fprintf(stderr, "error: no subcommand given (try --help)\n");
    return 2;
}

} // namespace hetbo
