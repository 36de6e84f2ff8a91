#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "frobenius/family.hpp"
#include "frobenius/param_set.hpp"
#include "frobenius/statistics.hpp"

namespace frobenius {

using json = nlohmann::json;

// ----------------------------------------------------------- JSON specs
// Every parser throws ConfigError on malformed input; family parsing throws
// DegenerateFamily for Delta = 0 or constant j.

/// {"f": [...], "g": [...]} | {"preset": "j-family"} | {"curve": {"A": a, "B": b}}
struct FamilySpec {
    std::optional<CurveFamily> family;
    std::optional<std::pair<std::int64_t, std::int64_t>> fixed_curve;
};
FamilySpec parse_family(const json& spec);

/// {"kind":"farey","T":..} | {"kind":"interval","T":..} | {"kind":"farey_pairs","T":..}
/// | {"kind":"sumset","U":[..],"V":[..]} (or "U_file"/"V_file": newline-delimited integers,
/// relative to base_dir).
ParamSet parse_param_set(const json& spec, const std::filesystem::path& base_dir = {});
std::vector<std::int64_t> read_integer_list(const std::filesystem::path& path);

/// {"stat":"trace","seq":{...}} | {"stat":"field","d":..} | {"stat":"angle","alpha":..,"beta":..}
/// | {"stat":"census","ell":..}
struct StatisticSpec {
    std::optional<Statistic> statistic;
    std::optional<std::int64_t> census_ell;
};
StatisticSpec parse_statistic(const json& spec);
TraceSequence parse_sequence(const json& spec);

// ----------------------------------------------------------- experiments

struct ExperimentConfig {
    json family = json::object();
    json paramset = json(nullptr);
    json statistic = json::object();
    std::int64_t x = 1000;
    std::int64_t census_cap = 5000;
    unsigned workers = 1;
    std::filesystem::path csv_path = "experiment.csv";
    std::filesystem::path json_path = "experiment.json";
    std::uint64_t seed = 20240601;
    std::filesystem::path base_dir;
    std::string preset;  // name when built from a preset, for the bound shape
};

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Writes the per-prime CSV and the JSON summary; returns the summary.
/// On failure no output file is left behind.
json run_experiment(const ExperimentConfig& config);

/// CSV header of run_experiment.
inline constexpr const char* kCsvHeader = "p,param_count,contribution,cumulative,pi_p,expected";

const std::vector<std::string>& preset_names();
/// Throws ConfigError for an unknown name.
ExperimentConfig preset_config(const std::string& name, std::optional<std::int64_t> x, std::optional<std::int64_t> T,
                               const std::filesystem::path& out_dir);

// ----------------------------------------------------------- acceptance

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string suite;
    bool passed = false;
    std::string detail;
    double elapsed_ms = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    std::string suite;  // oracle | identities | lemmas | theorems
    std::function<CriterionResult()> run;
};

const std::vector<Criterion>& acceptance_criteria();
const std::vector<std::string>& suite_names();

/// Runs the named bundle ("all" runs every criterion). Throws ConfigError for an unknown name.
std::vector<CriterionResult> run_suite(const std::string& name, const std::function<void(const CriterionResult&)>& on_result = {});

json suite_manifest(const std::string& name, const std::vector<CriterionResult>& results);

}  // namespace frobenius
