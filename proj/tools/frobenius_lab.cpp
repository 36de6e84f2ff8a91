#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "frobenius/errors.hpp"
#include "frobenius/runner.hpp"

using namespace frobenius;

namespace {

int print_summary(const json& summary) {
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_trace(std::int64_t p, std::int64_t a, std::int64_t b) {
    if (p < 3 || !is_prime(p)) throw HypothesisViolation("trace: p must be an odd prime");
    const auto curve = make_curve(p, a, b);
    if (curve.singular()) throw DegenerateFamily("trace: curve is singular mod p");
    const auto ap = trace(curve);
    json out{{"p", p}, {"A", a}, {"B", b}, {"a_p", ap}, {"points", p + 1 - ap}, {"angle", frobenius_angle(ap, p)}};
    if (ap != 0) out["field_disc"] = frobenius_field_disc(ap, p);
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_census(const std::string& preset, std::int64_t p) {
    if (preset != "j-family") throw ConfigError("census: only the j-family preset is available");
    const auto census = fiber_census(j_family(), p);
    std::cout << "w,a_p\n";
    for (std::int64_t w = 0; w < p; ++w)
        if (census.traces[w]) std::cout << w << ',' << *census.traces[w] << '\n';
    std::cerr << "census size " << census.size() << ", excluded " << census.excluded << ", max class ratio "
              << max_class_ratio(census) << '\n';
    return 0;
}

int cmd_suite(const std::string& name, const std::string& manifest_path) {
    const auto results = run_suite(name, [](const CriterionResult& r) {
        std::printf("[%s] %2d %-36s %9.0f ms  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.elapsed_ms,
                    r.detail.c_str());
        std::fflush(stdout);
    });
    const auto manifest = suite_manifest(name, results);
    if (!manifest_path.empty()) {
        std::ofstream out(manifest_path, std::ios::binary);
        out << manifest.dump(2) << '\n';
    }
    return manifest.at("passed").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius trace, field and angle statistics over elliptic-curve families"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned workers = 0;
    std::int64_t census_cap = 0;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--workers", workers, "worker threads (overrides the config)");
    run->add_option("--census-cap", census_cap, "largest census prime (overrides the config)");

    std::string preset_name, out_dir = ".";
    std::optional<std::int64_t> px, pT;
    auto* preset = app.add_subcommand("preset", "run a named preset experiment");
    preset->add_option("name", preset_name, "preset name")->required();
    preset->add_option("--x", px, "prime bound");
    preset->add_option("--T", pT, "parameter height");
    preset->add_option("--out", out_dir, "output directory");
    preset->add_option("--workers", workers, "worker threads");
    preset->add_option("--census-cap", census_cap, "largest census prime");

    std::string suite_name, manifest_path;
    auto* suite = app.add_subcommand("suite", "run an acceptance suite (oracle, identities, lemmas, theorems, all)");
    suite->add_option("name", suite_name, "suite name")->required();
    suite->add_option("--manifest", manifest_path, "write a JSON manifest here");

    std::int64_t tp = 0, ta = 0, tb = 0;
    auto* tr = app.add_subcommand("trace", "Frobenius trace of Y^2 = X^3 + AX + B over F_p");
    tr->add_option("--p", tp)->required();
    tr->add_option("--A", ta)->required();
    tr->add_option("--B", tb)->required();

    std::string census_preset;
    std::int64_t cp = 0;
    auto* census = app.add_subcommand("census", "fiber census of a family at p");
    census->add_option("--preset", census_preset)->required();
    census->add_option("--p", cp)->required();

    app.add_subcommand("presets", "list preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            auto cfg = load_config(config_path);
            if (workers > 0) cfg.workers = workers;
            if (census_cap > 0) cfg.census_cap = std::min(census_cap, cfg.x);
            return print_summary(run_experiment(cfg));
        }
        if (*preset) {
            auto cfg = preset_config(preset_name, px, pT, out_dir);
            if (workers > 0) cfg.workers = workers;
            if (census_cap > 0) cfg.census_cap = std::min(census_cap, cfg.x);
            return print_summary(run_experiment(cfg));
        }
        if (*suite) return cmd_suite(suite_name, manifest_path);
        if (*tr) return cmd_trace(tp, ta, tb);
        if (*census) return cmd_census(census_preset, cp);
        for (const auto& name : preset_names()) std::cout << name << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DegenerateFamily& e) {
        std::cerr << "degenerate family: " << e.what() << '\n';
        return 3;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
