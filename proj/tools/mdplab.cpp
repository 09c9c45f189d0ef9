// mdplab: generate instances, run plug-in sweeps, verify, and summarize results.

#include "mdplab/experiment.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace mdplab;

namespace {

int cmd_gen(const std::string& config_path, const std::string& out_dir) {
    const ExperimentConfig config = load_config(config_path);
    const GeneratedFiles files = generate_instance_files(config, out_dir);
    std::cout << "model " << files.model_path << '\n'
              << "features " << files.features_path << '\n';
    if (!files.derived_path.empty())
        std::cout << "derived " << files.derived_path << '\n';
    std::cout << "anchor_property holds=" << (files.anchor_property.holds ? "true" : "false")
              << " regularity=" << format_number(files.anchor_property.regularity)
              << " worst_negative=" << format_number(files.anchor_property.worst_negative_entry)
              << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, std::int64_t samples, int seed_index, int xi_index) {
    const ExperimentConfig config = load_config(config_path);
    const Instance instance = build_instance(config);
    if (xi_index < 0 || xi_index >= static_cast<int>(instance.xi.size()))
        throw ConfigError("xi-index", "out of range");
    write_csv(std::cout, {run_cell(config, instance, xi_index, samples, seed_index)});
    return 0;
}

int cmd_sweep(const std::string& config_path, std::string out_path, int threads) {
    ExperimentConfig config = load_config(config_path);
    if (threads > 0)
        config.threads = threads;
    if (out_path.empty())
        out_path = config.output;
    const auto rows = run_sweep(config);
    if (out_path.empty() || out_path == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw Error("cannot write " + out_path);
        write_csv(out, rows);
        std::cerr << rows.size() << " rows written to " << out_path << '\n';
    }
    return 0;
}

int cmd_verify(std::uint64_t seed, const std::vector<std::string>& fixtures,
               const std::string& out_path) {
    VerificationOptions options;
    options.seed = seed;
    options.fixture_files = fixtures;
    const VerificationReport report = run_verification_suite(options);
    const std::string json = report.to_json();
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream(out_path, std::ios::binary) << json;
    }
    for (const auto& c : report.checks)
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    return report.passed() ? 0 : 1;
}

int cmd_report(const std::string& csv_path, const std::string& plot_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw Error("cannot open " + csv_path);
    const Report report = summarize(read_csv(in));
    write_report_table(std::cout, report);
    if (!plot_path.empty()) {
        std::ofstream plot(plot_path, std::ios::binary);
        if (!plot)
            throw Error("cannot write " + plot_path);
        write_plot_data(plot, report);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plug-in model-based planning under linear transition models"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;

    auto* gen = app.add_subcommand("gen", "write model and feature files for an instance");
    gen->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
    gen->add_option("-o,--out", out, "output directory")->required();

    std::int64_t samples = 0;
    int seed_index = 0;
    int xi_index = 0;
    auto* run = app.add_subcommand("run", "score a single (N, seed) cell");
    run->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
    run->add_option("-N,--samples", samples, "samples per anchor pair")->required();
    run->add_option("-s,--seed-index", seed_index, "seed index within the cell");
    run->add_option("-x,--xi-index", xi_index, "position in the xi list");

    int threads = 0;
    auto* sweep = app.add_subcommand("sweep", "run every cell and write a CSV");
    sweep->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
    sweep->add_option("-o,--out", out, "CSV path (default: config output, '-' for stdout)");
    sweep->add_option("-j,--threads", threads, "worker threads (overrides config)");

    std::uint64_t verify_seed = VerificationOptions{}.seed;
    std::vector<std::string> fixtures;
    auto* verify = app.add_subcommand("verify", "run the identity and inequality checks");
    verify->add_option("--seed", verify_seed, "seed for randomized checks");
    verify->add_option("--fixture", fixtures, "model files whose invariants are checked");
    verify->add_option("-o,--out", out, "JSON report path (default stdout)");

    std::string csv_path;
    std::string plot_path;
    auto* report = app.add_subcommand("report", "aggregate a sweep CSV");
    report->add_option("csv", csv_path, "sweep CSV")->required();
    report->add_option("-p,--plot", plot_path, "plot-data output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(config_path, out);
        if (run->parsed())
            return cmd_run(config_path, samples, seed_index, xi_index);
        if (sweep->parsed())
            return cmd_sweep(config_path, out, threads);
        if (verify->parsed())
            return cmd_verify(verify_seed, fixtures, out);
        if (report->parsed())
            return cmd_report(csv_path, plot_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
