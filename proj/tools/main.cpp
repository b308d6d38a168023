// bohmflow command-line front end.  Talks to the simulator exclusively
// through the C API in bohmflow.h.

#include "bohmflow.h"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace {

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("BOHMFLOW_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct ConfigHandle {
    bf_config* cfg = nullptr;
    ~ConfigHandle() { bf_config_free(cfg); }
};

int load_and_override(ConfigHandle& h, const std::string& path,
                      const std::string& out_dir, long long seed,
                      bool seed_set) {
    h.cfg = bf_config_load(path.c_str());
    if (!h.cfg) {
        std::fprintf(stderr, "error: %s\n", bf_last_error());
        return BF_ERR_CONFIG;
    }
    if (!out_dir.empty() &&
        bf_config_set(h.cfg, "output.dir", out_dir.c_str()) != BF_OK) {
        std::fprintf(stderr, "error: %s\n", bf_last_error());
        return BF_ERR_CONFIG;
    }
    if (seed_set && bf_config_set(h.cfg, "ensemble.seed",
                                  std::to_string(seed).c_str()) != BF_OK) {
        std::fprintf(stderr, "error: %s\n", bf_last_error());
        return BF_ERR_CONFIG;
    }
    return BF_OK;
}

int report_outcome(bf_status st, char* report) {
    if (report) {
        std::fputs(report, stdout);
        bf_string_free(report);
    }
    if (st != BF_OK) std::fprintf(stderr, "error: %s\n", bf_last_error());
    return static_cast<int>(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bohmflow: pilot-wave two-arm interferometer simulator"};
    app.require_subcommand(1);

    std::string config_path, config_flag, out_dir;
    long long seed = 0;
    bool seed_set = false;
    int threads = 0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        cmd->add_option("config", config_path, "scenario config file");
        cmd->add_option("--config", config_flag, "scenario config file");
        cmd->add_option("--out", out_dir, "override output.dir");
        cmd->add_option("--seed", seed, "override ensemble.seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--threads", threads, "worker threads");
        (void)config_required;
    };

    auto* run = app.add_subcommand("run", "run a scenario end to end");
    add_common(run, true);

    auto* fields = app.add_subcommand("fields", "dump field grids");
    add_common(fields, true);
    std::vector<int> grid;
    double field_time = -1.0;
    fields->add_option("--grid", grid, "grid resolution NX NZ")->expected(2);
    fields->add_option("--time", field_time, "evaluation time");

    auto* sweep = app.add_subcommand("sweep", "sweep one numeric config key");
    add_common(sweep, true);
    std::string param;
    std::vector<double> values;
    sweep->add_option("--param", param, "config key to sweep")->required();
    sweep->add_option("--values", values, "sweep values")->required();

    auto* version = app.add_subcommand("version", "print version");

    CLI11_PARSE(app, argc, argv);

    if (version->parsed()) {
        std::printf("%s\n", bf_version());
        return 0;
    }

    if (config_path.empty()) config_path = config_flag;
    if (config_path.empty()) {
        std::fprintf(stderr, "error: no config file given\n");
        return BF_ERR_CONFIG;
    }

    ConfigHandle h;
    const int rc = load_and_override(h, config_path, out_dir, seed, seed_set);
    if (rc != BF_OK) return rc;
    const int nthreads = resolve_threads(threads);

    char* report = nullptr;
    if (run->parsed())
        return report_outcome(bf_run(h.cfg, nthreads, &report), report);
    if (fields->parsed()) {
        const int nx = grid.size() == 2 ? grid[0] : 0;
        const int nz = grid.size() == 2 ? grid[1] : 0;
        return report_outcome(
            bf_fields(h.cfg, nx, nz, field_time, nthreads, &report), report);
    }
    if (sweep->parsed())
        return report_outcome(bf_sweep(h.cfg, param.c_str(), values.data(),
                                       values.size(), nthreads, &report),
                              report);
    return BF_ERR_CONFIG;
}
