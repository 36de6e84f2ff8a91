#include "frobenius/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "frobenius/errors.hpp"
#include "frobenius/parallel.hpp"

namespace frobenius {

namespace fs = std::filesystem;

namespace {

std::int64_t get_int(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\" in " + j.dump());
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("key \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

double get_real(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\" in " + j.dump());
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("key \"") + key + "\" must be a number");
    return v.get<double>();
}

std::vector<std::int64_t> get_int_list(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(std::string("key \"") + key + "\" must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw ConfigError(std::string("key \"") + key + "\" must hold integers");
        out.push_back(e.get<std::int64_t>());
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- specs

FamilySpec parse_family(const json& spec) {
    if (!spec.is_object()) throw ConfigError("family spec must be a JSON object");
    FamilySpec out;
    if (spec.contains("preset")) {
        const auto name = spec.at("preset").get<std::string>();
        if (name != "j-family") throw ConfigError("unknown family preset \"" + name + "\"");
        out.family = j_family();
        return out;
    }
    if (spec.contains("curve")) {
        const auto& c = spec.at("curve");
        out.fixed_curve = std::make_pair(get_int(c, "A"), get_int(c, "B"));
        CurveSource::fixed(out.fixed_curve->first, out.fixed_curve->second);  // rejects singular curves
        return out;
    }
    if (!spec.contains("f") || !spec.contains("g")) throw ConfigError("family spec needs \"f\" and \"g\"");
    auto fam = CurveFamily::from_polys(IntPoly(get_int_list(spec, "f")), IntPoly(get_int_list(spec, "g")),
                                       spec.value("id", std::string{}));
    fam.require_nondegenerate();
    out.family = std::move(fam);
    return out;
}

std::vector<std::int64_t> read_integer_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read integer list " + path.string());
    std::vector<std::int64_t> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(line.substr(first), &used));
        } catch (const std::exception&) {
            throw ConfigError("bad integer \"" + line + "\" in " + path.string());
        }
    }
    return out;
}

ParamSet parse_param_set(const json& spec, const fs::path& base_dir) {
    if (!spec.is_object() || !spec.contains("kind")) throw ConfigError("paramset spec needs \"kind\"");
    const auto kind = spec.at("kind").get<std::string>();
    try {
        if (kind == "farey") return ParamSet::farey(get_int(spec, "T"));
        if (kind == "interval") return ParamSet::interval(get_int(spec, "T"));
        if (kind == "farey_pairs") return ParamSet::farey_pairs(get_int(spec, "T"));
        if (kind == "sumset") {
            auto list = [&](const char* key, const char* file_key) {
                if (spec.contains(key)) return get_int_list(spec, key);
                if (spec.contains(file_key)) return read_integer_list(base_dir / spec.at(file_key).get<std::string>());
                throw ConfigError(std::string("sumset spec needs \"") + key + "\" or \"" + file_key + "\"");
            };
            return ParamSet::sumset(list("U", "U_file"), list("V", "V_file"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown paramset kind \"" + kind + "\"");
}

TraceSequence parse_sequence(const json& spec) {
    const auto kind = spec.at("kind").get<std::string>();
    if (kind == "zero") return TraceSequence::zero();
    if (kind == "constant") return TraceSequence::constant(get_int(spec, "a"));
    if (kind == "extremal") return TraceSequence::extremal();
    if (kind == "custom") {
        std::map<std::int64_t, std::int64_t> table;
        for (const auto& [k, v] : spec.at("table").items()) table[std::stoll(k)] = v.get<std::int64_t>();
        return TraceSequence::custom(std::move(table));
    }
    throw ConfigError("unknown trace sequence kind \"" + kind + "\"");
}

StatisticSpec parse_statistic(const json& spec) {
    if (!spec.is_object() || !spec.contains("stat")) throw ConfigError("statistic spec needs \"stat\"");
    const auto stat = spec.at("stat").get<std::string>();
    StatisticSpec out;
    try {
        if (stat == "trace")
            out.statistic = Statistic::trace(parse_sequence(spec.at("seq")));
        else if (stat == "field")
            out.statistic = Statistic::field(get_int(spec, "d"));
        else if (stat == "angle")
            out.statistic = Statistic::angle(AngleWindow(get_real(spec, "alpha"), get_real(spec, "beta")));
        else if (stat == "census")
            out.census_ell = get_int(spec, "ell");
        else
            throw ConfigError("unknown statistic \"" + stat + "\"");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

// ----------------------------------------------------------- config

ExperimentConfig parse_config(const json& doc, const fs::path& base_dir) try {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    c.base_dir = base_dir;
    if (!doc.contains("family") || !doc.contains("statistic"))
        throw ConfigError("config needs \"family\" and \"statistic\"");
    c.family = doc.at("family");
    c.statistic = doc.at("statistic");
    c.paramset = doc.value("paramset", json(nullptr));
    c.x = doc.contains("x") ? get_int(doc, "x") : c.x;
    c.census_cap = doc.contains("census_cap") ? get_int(doc, "census_cap") : c.census_cap;
    const std::int64_t workers = doc.contains("workers") ? get_int(doc, "workers") : 1;
    if (workers < 1 || workers > 1024) throw ConfigError("workers must be in [1, 1024]");
    c.workers = static_cast<unsigned>(workers);
    c.seed = doc.contains("seed") ? static_cast<std::uint64_t>(get_int(doc, "seed")) : c.seed;
    c.preset = doc.value("preset", std::string{});
    if (doc.contains("csv")) c.csv_path = base_dir / doc.at("csv").get<std::string>();
    if (doc.contains("json")) c.json_path = base_dir / doc.at("json").get<std::string>();
    if (c.x < 5) throw ConfigError("x must be >= 5");
    if (c.census_cap < 3) throw ConfigError("census_cap must be >= 3");
    c.census_cap = std::min(c.census_cap, c.x);
    return c;
} catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc, path.parent_path());
}

// ----------------------------------------------------------- presets

namespace {

struct Preset {
    std::string name;
    json family;
    json paramset;  // null for single-curve presets
    json statistic;
    std::int64_t x;
    // LHS / bound-shape denominator; null for none.
    std::function<double(double T, double x, double n_uv)> bound;
};

json default_family() { return json{{"f", {0, 1}}, {"g", {1}}, {"id", "f=Z,g=1"}}; }
json jfam() { return json{{"preset", "j-family"}}; }
json seq_stat(const char* kind) { return json{{"stat", "trace"}, {"seq", {{"kind", kind}}}}; }
json field_stat(std::int64_t d) { return json{{"stat", "field"}, {"d", d}}; }
json middle_window() {
    return json{{"stat", "angle"}, {"alpha", std::numbers::pi / 3}, {"beta", 2 * std::numbers::pi / 3}};
}

const std::vector<Preset>& presets() {
    using std::pow;
    static const std::vector<Preset> table = {
        {"deuring-cm", json{{"curve", {{"A", 1}, {"B", 0}}}}, nullptr, seq_stat("zero"), 100000,
         [](double, double x, double) { return x / (2 * std::log(x)); }},
        {"lt-ab", default_family(), json{{"kind", "farey"}, {"T", 20}}, seq_stat("extremal"), 10000,
         [](double T, double x, double) { return T * pow(x, 11.0 / 8) + T * T * pow(x, 7.0 / 8); }},
        {"lt-j", jfam(), json{{"kind", "farey"}, {"T", 20}}, seq_stat("zero"), 10000,
         [](double T, double x, double) { return T * pow(x, 5.0 / 4) + T * T * pow(x, 3.0 / 4); }},
        {"lt-ab-pairs", default_family(), json{{"kind", "farey_pairs"}, {"T", 10}}, seq_stat("extremal"), 5000,
         [](double T, double x, double) { return pow(T, 5) + pow(T, 3) * pow(x, 5.0 / 4) + pow(T, 4) * pow(x, 3.0 / 4); }},
        {"lt-k", default_family(), json{{"kind", "farey"}, {"T", 20}}, field_stat(-1), 10000,
         [](double T, double x, double) { return T * pow(x, 4.0 / 3) + T * T * pow(x, 5.0 / 6); }},
        {"lt-k-pairs", default_family(), json{{"kind", "farey_pairs"}, {"T", 10}}, field_stat(-1), 5000,
         [](double T, double x, double) { return pow(T, 4) * pow(x, 5.0 / 6) + T * T * pow(x, 4.0 / 3); }},
        {"st-farey", default_family(), json{{"kind", "farey_pairs"}, {"T", 10}}, middle_window(), 5000, nullptr},
        {"lt-i", default_family(), json{{"kind", "interval"}, {"T", 100}}, seq_stat("extremal"), 10000,
         [](double T, double x, double) { return T * T + std::sqrt(T) * pow(x, 5.0 / 4); }},
        {"lt-setsum", default_family(), json{{"kind", "sumset"}, {"T", 40}}, seq_stat("extremal"), 10000,
         [](double T, double x, double n) { return T * n + pow(n, 3.0 / 4) * pow(x, 5.0 / 4); }},
        {"lt-ki", default_family(), json{{"kind", "interval"}, {"T", 100}}, field_stat(-1), 10000,
         [](double T, double x, double) { return std::sqrt(T) * pow(x, 4.0 / 3) + T * pow(x, 5.0 / 6); }},
        {"st-setsum", jfam(), json{{"kind", "sumset"}, {"T", 40}}, middle_window(), 10000, nullptr},
    };
    return table;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

// Sumset presets carry only T; expand to U = V = I(T).
json expand_paramset(json spec) {
    if (spec.is_object() && spec.value("kind", "") == "sumset" && !spec.contains("U")) {
        const auto T = spec.at("T").get<std::int64_t>();
        std::vector<std::int64_t> range(static_cast<std::size_t>(T));
        for (std::int64_t i = 0; i < T; ++i) range[i] = i + 1;
        spec = json{{"kind", "sumset"}, {"U", range}, {"V", range}};
    }
    return spec;
}

struct CsvRow {
    std::int64_t p;
    std::int64_t param_count;
    std::string contribution;
    std::string cumulative;
    std::int64_t pi_p;
    std::string expected;
};

void write_outputs(const ExperimentConfig& cfg, const std::vector<CsvRow>& rows, const json& summary) {
    const fs::path csv_tmp = cfg.csv_path.string() + ".tmp";
    const fs::path json_tmp = cfg.json_path.string() + ".tmp";
    try {
        for (const auto& path : {cfg.csv_path, cfg.json_path})
            if (path.has_parent_path()) fs::create_directories(path.parent_path());
        {
            std::ofstream out(csv_tmp, std::ios::binary);
            out << kCsvHeader << '\n';
            for (const auto& r : rows)
                out << r.p << ',' << r.param_count << ',' << r.contribution << ',' << r.cumulative << ',' << r.pi_p
                    << ',' << r.expected << '\n';
            if (!out) throw std::runtime_error("failed writing " + csv_tmp.string());
        }
        {
            std::ofstream out(json_tmp, std::ios::binary);
            out << summary.dump(2) << '\n';
            if (!out) throw std::runtime_error("failed writing " + json_tmp.string());
        }
        fs::rename(csv_tmp, cfg.csv_path);
        fs::rename(json_tmp, cfg.json_path);
    } catch (...) {
        std::error_code ec;
        for (const auto& path : {csv_tmp, json_tmp, cfg.csv_path, cfg.json_path}) fs::remove(path, ec);
        throw;
    }
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& p : presets()) out.push_back(p.name);
        return out;
    }();
    return names;
}

ExperimentConfig preset_config(const std::string& name, std::optional<std::int64_t> x, std::optional<std::int64_t> T,
                               const fs::path& out_dir) {
    const Preset* preset = find_preset(name);
    if (!preset) throw ConfigError("unknown preset \"" + name + "\"");
    json doc{{"family", preset->family}, {"statistic", preset->statistic}, {"x", x.value_or(preset->x)},
             {"preset", name}};
    if (!preset->paramset.is_null()) {
        json ps = preset->paramset;
        if (T) ps["T"] = *T;
        doc["paramset"] = expand_paramset(ps);
    }
    auto cfg = parse_config(doc);
    cfg.csv_path = out_dir / (name + ".csv");
    cfg.json_path = out_dir / (name + ".json");
    return cfg;
}

// ----------------------------------------------------------- experiment

json run_experiment(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    FamilySpec fam;
    StatisticSpec stat;
    try {
        fam = parse_family(cfg.family);
        stat = parse_statistic(cfg.statistic);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const PrimeList primes = sieve_primes(cfg.x);

    std::vector<CsvRow> rows;
    json totals;
    double avg_per_param = 0.0;
    double ratio_to_pi = 0.0;
    json bound_ratio = nullptr;

    if (stat.census_ell) {
        if (!fam.family) throw ConfigError("census statistic needs a family, not a fixed curve");
        const std::int64_t ell = *stat.census_ell;
        if (ell < 17 || !is_prime(ell)) throw HypothesisViolation("census: ell must be a prime >= 17");
        std::vector<std::int64_t> census_primes;
        for (auto p : primes)
            if (p >= 3 && p <= cfg.census_cap && p != ell) census_primes.push_back(p);
        struct Out {
            std::int64_t size;
            double deviation;
        };
        std::vector<Out> outs(census_primes.size());
        parallel_for(
            census_primes.size(), cfg.workers,
            [&](std::size_t i) {
                const auto census = fiber_census(*fam.family, census_primes[i]);
                double worst = 0.0;
                for (std::int64_t a = 0; a < ell; ++a) {
                    const double dev = std::fabs(static_cast<double>(census_mod_ell(census, a, ell)) -
                                                 static_cast<double>(census.size()) / static_cast<double>(ell));
                    worst = std::max(worst, dev);
                }
                outs[i] = {census.size(), worst};
            },
            1);
        double cumulative = 0.0;
        double worst_ratio = 0.0;
        std::int64_t fibers = 0;
        for (std::size_t i = 0; i < census_primes.size(); ++i) {
            const std::int64_t p = census_primes[i];
            const double shape = static_cast<double>(ell) * std::sqrt(static_cast<double>(p));
            cumulative += outs[i].deviation;
            fibers += outs[i].size;
            worst_ratio = std::max(worst_ratio, outs[i].deviation / shape);
            rows.push_back({p, outs[i].size, format_real(outs[i].deviation), format_real(cumulative),
                            primes.count_upto(p), format_real(shape)});
        }
        totals = json{{"deviation_sum", cumulative}, {"fibers", fibers}, {"ell", ell},
                      {"census_primes", static_cast<std::int64_t>(census_primes.size())}};
        avg_per_param = fibers > 0 ? cumulative / static_cast<double>(census_primes.size()) : 0.0;
        ratio_to_pi = 0.0;
        bound_ratio = worst_ratio;
    } else {
        StatReport report;
        std::int64_t T = 0;
        double n_uv = 0.0;
        if (fam.fixed_curve) {
            report = count_primes(CurveSource::fixed(fam.fixed_curve->first, fam.fixed_curve->second),
                                  *stat.statistic, cfg.x, cfg.workers);
        } else {
            if (cfg.paramset.is_null()) throw ConfigError("family experiments need a \"paramset\"");
            const ParamSet set = [&] {
                try {
                    return parse_param_set(cfg.paramset, cfg.base_dir);
                } catch (const json::exception& e) {
                    throw ConfigError(std::string("paramset: ") + e.what());
                }
            }();
            T = set.T();
            n_uv = static_cast<double>(set.size());
            report = family_average(*fam.family, set, *stat.statistic, cfg.x, cfg.workers);
        }
        std::int64_t good = 0;
        for (const auto& r : report.rows) {
            good += r.param_count;
            const auto pi_p = primes.count_upto(r.p);
            rows.push_back({r.p, r.param_count, std::to_string(r.contribution), std::to_string(r.cumulative), pi_p,
                            report.st_mass ? format_real(*report.st_mass * static_cast<double>(pi_p)) : ""});
        }
        totals = json{{"contribution", report.total},
                      {"parameters", report.parameters},
                      {"degenerate_parameters", report.degenerate_parameters},
                      {"good_reductions", good},
                      {"primes", report.pi_x}};
        if (report.st_mass) {
            totals["st_mass"] = *report.st_mass;
            totals["st_deviation"] = *report.st_deviation;
        }
        avg_per_param = report.avg_per_param;
        ratio_to_pi = report.ratio_to_pi;
        if (const Preset* preset = find_preset(cfg.preset)) {
            if (preset->bound) {
                const double shape = preset->bound(static_cast<double>(T), static_cast<double>(cfg.x), n_uv);
                bound_ratio = static_cast<double>(report.total) / shape;
            } else if (report.st_deviation) {
                bound_ratio = std::fabs(*report.st_deviation);
            }
        }
    }

    json echo{{"family", cfg.family}, {"paramset", cfg.paramset}, {"statistic", cfg.statistic},
              {"x", cfg.x},           {"census_cap", cfg.census_cap}, {"seed", cfg.seed}};
    if (!cfg.preset.empty()) echo["preset"] = cfg.preset;
    const auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    json summary{{"config", echo},
                 {"totals", totals},
                 {"avg_per_param", avg_per_param},
                 {"ratio_to_pi", ratio_to_pi},
                 {"bound_ratio", bound_ratio},
                 {"elapsed_ms", elapsed}};
    write_outputs(cfg, rows, summary);
    return summary;
}

}  // namespace frobenius
