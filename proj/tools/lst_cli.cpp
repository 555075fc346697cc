#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "workload.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LST_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring unparsable LST_SEED\n";
        }
    }
    return 0;
}

int mode_from(const std::string& s) {
    if (s == "exact") return 0;
    if (s == "random") return 1;
    throw CLI::ValidationError("--mode", "expected 'exact' or 'random'");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazy search tree workload harness"};
    app.require_subcommand(1);

    std::string scenario, params_csv, mode_str = "random", csv_path, script_path, out_path;
    std::uint64_t seed = default_seed();
    bool verify = false, check = false;
    std::vector<std::uint64_t> grid;
    int repeats = 3;

    auto* gen = app.add_subcommand("gen", "generate a scenario script");
    gen->add_option("--scenario", scenario, "scenario name")->required();
    gen->add_option("--params", params_csv, "K=V,K=V scenario parameters");
    gen->add_option("--seed", seed, "rng seed (falls back to LST_SEED)");
    gen->add_option("-o,--output", out_path, "write script here instead of stdout");

    auto* run = app.add_subcommand("run", "execute a script");
    run->add_option("script", script_path, "script file ('-' for stdin)");
    run->add_option("--scenario", scenario, "generate this scenario instead of reading a file");
    run->add_option("--params", params_csv, "K=V,K=V scenario parameters");
    run->add_option("--mode", mode_str, "exact|random")->capture_default_str();
    run->add_option("--seed", seed, "rng seed (falls back to LST_SEED)");
    run->add_flag("--verify", verify, "shadow every op on the reference model and diff answers");
    run->add_flag("--check", check, "audit structural invariants after every op (slow)");
    run->add_option("--csv", csv_path, "write per-tree stats rows here");

    auto* bench = app.add_subcommand("bench", "comparison-count and wall-time table vs baselines");
    bench->add_option("--scenario", scenario, "scenario name")->required();
    bench->add_option("--params", params_csv, "K=V,K=V scenario parameters");
    bench->add_option("--grid", grid, "values of n to sweep")->delimiter(',');
    bench->add_option("--repeats", repeats, "repetitions per cell (median reported)")
        ->capture_default_str();
    bench->add_option("--mode", mode_str, "exact|random")->capture_default_str();
    bench->add_option("--seed", seed, "rng seed (falls back to LST_SEED)");
    bench->add_option("--csv", csv_path, "write the result table here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            wl::Script s = wl::generate(scenario, wl::parse_params(params_csv), seed);
            std::string text = wl::to_text(s);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << text;
            }
            return 0;
        }

        if (run->parsed()) {
            wl::Script s;
            if (!scenario.empty())
                s = wl::generate(scenario, wl::parse_params(params_csv), seed);
            else if (!script_path.empty())
                s = wl::parse(slurp(script_path));
            else
                throw std::runtime_error("run needs a script file or --scenario");

            wl::RunOptions opt;
            opt.verify = verify;
            opt.mode = mode_from(mode_str);
            opt.seed = seed;
            opt.csv_path = csv_path;
            opt.check_invariants = check;
            opt.echo_splits = true;
            wl::RunReport rep = wl::run(s, opt);
            std::cout << wl::summarize(rep);
            if (rep.mismatches > 0) {
                std::cerr << "mismatch: " << rep.first_mismatch << "\n";
                return 1;
            }
            if (!rep.invariant_failure.empty()) {
                std::cerr << "invariant failure: " << rep.invariant_failure << "\n";
                return 1;
            }
            if (rep.op_errors > 0) {
                std::cerr << "op error: " << rep.first_error << "\n";
                return 2;
            }
            return 0;
        }

        // bench
        wl::BenchOptions opt;
        opt.scenario = scenario;
        opt.params = wl::parse_params(params_csv);
        opt.grid = grid;
        opt.repeats = repeats;
        opt.mode = mode_from(mode_str);
        opt.seed = seed;
        wl::BenchReport rep = wl::bench(opt);
        std::string table = wl::bench_csv(rep);
        std::cout << table;
        if (!csv_path.empty()) {
            std::ofstream f(csv_path);
            if (!f) throw std::runtime_error("cannot write " + csv_path);
            f << table;
        }
        for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";
        return 0;
    } catch (const wl::ScriptError& e) {
        std::cerr << "script error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
