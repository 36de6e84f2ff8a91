#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "frobenius/errors.hpp"
#include "frobenius/harmonic.hpp"
#include "frobenius/oracles.hpp"
#include "frobenius/runner.hpp"

namespace frobenius {

namespace fs = std::filesystem;

namespace {

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

struct Outcome {
    bool passed;
    std::string detail;
};

std::vector<std::int64_t> odd_primes(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (auto p : sieve_primes(hi))
        if (p >= lo && p >= 3) out.push_back(p);
    return out;
}

CurveModP random_nonsingular(std::mt19937_64& rng, std::int64_t p) {
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    for (;;) {
        const auto c = make_curve(p, coef(rng), coef(rng));
        if (!c.singular()) return c;
    }
}

Outcome trace_oracle() {
    std::mt19937_64 rng(1);
    std::int64_t checked = 0;
    for (auto p : odd_primes(5, 199)) {
        for (int i = 0; i < 50; ++i) {
            const auto c = random_nonsingular(rng, p);
            const auto fast = trace(c), slow = trace_naive(c);
            if (fast != slow)
                return {false, fmt("p=%lld A=%lld B=%lld: trace %lld != naive %lld", (long long)p, (long long)c.a,
                                   (long long)c.b, (long long)fast, (long long)slow)};
            ++checked;
        }
    }
    return {true, fmt("%lld curves agree", (long long)checked)};
}

Outcome hasse() {
    std::mt19937_64 rng(2);
    const auto primes = odd_primes(3, 10000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::vector<std::int64_t> ps(100000);
    for (auto& p : ps) p = primes[pick(rng)];
    std::sort(ps.begin(), ps.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < ps.size();) {
        const std::int64_t p = ps[i];
        const QuadraticCharacter chi(p);
        for (; i < ps.size() && ps[i] == p; ++i) {
            const auto a = trace(random_nonsingular(rng, p), chi);
            if (a * a > 4 * p) return {false, fmt("a=%lld exceeds 2 sqrt(p) at p=%lld", (long long)a, (long long)p)};
            worst = std::max(worst, static_cast<double>(a * a) / static_cast<double>(4 * p));
        }
    }
    return {true, fmt("100000 curves, max a^2/4p = %.6f", worst)};
}

Outcome deuring() {
    const auto r = pi_trace(CurveSource::fixed(1, 0), TraceSequence::zero(), 100000);
    const bool ok = r.ratio_to_pi >= 0.45 && r.ratio_to_pi <= 0.55;
    return {ok, fmt("pi_E(0;1e5) = %lld, pi(x) = %lld, ratio %.6f", (long long)r.total, (long long)r.pi_x,
                    r.ratio_to_pi)};
}

Outcome cm_field() {
    const auto source = CurveSource::fixed(1, 0);
    std::int64_t nonzero = 0, gaussian = 0;
    for (auto p : odd_primes(3, 10000)) {
        const auto c = source.reduce(p);
        if (!c) continue;
        const auto a = trace(*c);
        if (a == 0) continue;
        ++nonzero;
        if (frobenius_field_disc(a, p) == -1) ++gaussian;
    }
    return {nonzero > 0 && nonzero == gaussian,
            fmt("%lld of %lld primes with a_p != 0 give d = -1", (long long)gaussian, (long long)nonzero)};
}

Outcome sato_tate_single() {
    std::vector<double> edges;
    for (int i = 0; i <= 8; ++i) edges.push_back(std::numbers::pi * i / 8);
    const auto parts = angle_partition(CurveSource::fixed(1, 1), edges, 100000);
    double worst = 0.0;
    for (std::size_t c = 0; c < parts.counts.size(); ++c) {
        const double freq = static_cast<double>(parts.counts[c]) / static_cast<double>(parts.good_primes);
        worst = std::max(worst, std::fabs(freq - st_density(AngleWindow(edges[c], edges[c + 1]))));
    }
    return {worst < 0.02, fmt("%lld good primes, max cell deviation %.5f", (long long)parts.good_primes, worst)};
}

Outcome st_closed_form() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double a = angle(rng), b = angle(rng);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        worst = std::max(worst, std::fabs(st_density(AngleWindow(a, b)) - oracle::st_density_quadrature(a, b)));
    }
    const double middle = oracle::st_density_quadrature(std::numbers::pi / 3, 2 * std::numbers::pi / 3);
    return {worst < 1e-10, fmt("max |closed - quadrature| = %.3g; mu(pi/3, 2pi/3) = %.5f", worst, middle)};
}

Outcome coincidence_oracle() {
    const auto primes = odd_primes(2, 101);
    std::vector<std::int64_t> small{2};
    small.insert(small.end(), primes.begin(), primes.end());
    for (std::int64_t T = 1; T <= 30; ++T)
        for (auto p : small) {
            const auto fast = coincidence_count_Q(T, p), slow = oracle::coincidence_pairs(T, p);
            if (fast != slow)
                return {false, fmt("T=%lld p=%lld: histogram %lld != brute %lld", (long long)T, (long long)p,
                                   (long long)fast, (long long)slow)};
        }

    // Diagnostic: Q min(p, T^2) / T^4 over T = 10..100, p <= 1e4, built incrementally in T.
    std::vector<std::vector<RationalParam>> layer(101);
    for (const auto& r : farey_enumerate(100)) layer[std::max(r.u, r.v)].push_back(r);
    double worst = 0.0;
    std::int64_t worst_T = 0, worst_p = 0;
    for (auto p : sieve_primes(10000)) {
        std::vector<std::int64_t> hist(static_cast<std::size_t>(p), 0);
        std::int64_t Q = 0;
        for (std::int64_t T = 1; T <= 100; ++T) {
            for (const auto& r : layer[T]) {
                if (r.v % p == 0) continue;
                auto& c = hist[static_cast<std::size_t>(mul_mod(r.u % p, mod_inverse(r.v, p), p))];
                Q += 2 * c + 1;
                ++c;
            }
            if (T < 10) continue;
            if ((T == 10 || T == 100) && p < 200 && Q != coincidence_count_Q(T, p))
                return {false, fmt("incremental Q disagrees at T=%lld p=%lld", (long long)T, (long long)p)};
            const double ratio = static_cast<double>(Q) * static_cast<double>(std::min(p, T * T)) /
                                 std::pow(static_cast<double>(T), 4);
            if (ratio > worst) worst = ratio, worst_T = T, worst_p = p;
        }
    }
    return {worst <= 10.0, fmt("exact for T<=30, p<=101; max Q min(p,T^2)/T^4 = %.4f at T=%lld p=%lld", worst,
                               (long long)worst_T, (long long)worst_p)};
}

Outcome energy_oracle() {
    for (std::int64_t T = 1; T <= 6; ++T)
        for (auto p : sieve_primes(31)) {
            const auto fast = additive_energy_V(T, p), slow = oracle::energy_quadruples(T, p);
            if (fast != slow)
                return {false, fmt("T=%lld p=%lld: convolution %lld != brute %lld", (long long)T, (long long)p,
                                   (long long)fast, (long long)slow)};
        }
    double worst = 0.0;
    for (std::int64_t T = 1; T <= 50; ++T)
        for (auto p : odd_primes(3, 499)) {
            const auto S = farey_expsum_all(T, p);
            double s2 = 0.0, s4 = 0.0;
            for (const auto& z : S) {
                const double n = std::norm(z);
                s2 += n;
                s4 += n * n;
            }
            const double pq = static_cast<double>(p) * static_cast<double>(coincidence_count_Q(T, p));
            const double pv = static_cast<double>(p) * static_cast<double>(additive_energy_V(T, p));
            worst = std::max({worst, std::fabs(s2 - pq) / pq, std::fabs(s4 - pv) / pv});
        }
    return {worst <= 1e-6, fmt("exact for T<=6, p<=31; max Parseval relative error %.3g", worst)};
}

Outcome census_equidistribution() {
    const auto fam = j_family();
    std::string detail;
    bool ok = true;
    for (std::int64_t p : {1009, 2003}) {
        const auto census = CensusCache::shared().get(fam, p);
        double worst = 0.0;
        for (std::int64_t a = 0; a < 17; ++a)
            worst = std::max(worst, std::fabs(static_cast<double>(census_mod_ell(*census, a, 17)) -
                                              static_cast<double>(census->size()) / 17.0));
        const double bound = 3.0 * 17.0 * std::sqrt(static_cast<double>(p));
        ok = ok && worst <= bound;
        detail += fmt("p=%lld: max dev %.2f (bound %.1f) ", (long long)p, worst, bound);
    }
    return {ok, detail};
}

Outcome michel() {
    const auto fam = j_family();
    const double s0 = std::abs(michel_sum(fam, 5, 1, 0));
    double worst = 0.0;
    for (auto p : odd_primes(5, 500))
        for (int n = 1; n <= 8; ++n)
            for (std::int64_t m = 0; m <= 2; ++m)
                worst = std::max(worst, std::abs(michel_sum(fam, p, n, m)) / (n * std::sqrt(static_cast<double>(p))));
    return {worst <= 5.0 && s0 < 1e-9, fmt("max |S|/(n sqrt p) = %.4f; |S(5,1,0)| = %.2g", worst, s0)};
}

Outcome counters() {
    const auto fam = j_family();
    const std::vector<AngleWindow> windows{AngleWindow(std::numbers::pi / 3, 2 * std::numbers::pi / 3),
                                           AngleWindow(0, std::numbers::pi / 2),
                                           AngleWindow(std::numbers::pi / 4, std::numbers::pi),
                                           AngleWindow(0, std::numbers::pi)};
    std::mt19937_64 rng(11);
    std::int64_t checks = 0;
    for (std::int64_t T = 1; T <= 8; ++T)
        for (auto p : odd_primes(3, 31))
            for (const auto& w : windows) {
                std::vector<std::int64_t> U, V;
                for (std::int64_t t = 1; t <= T; ++t) {
                    if (rng() & 1) U.push_back(t);
                    if (rng() & 1) V.push_back(t);
                }
                if (U.empty()) U.push_back(T);
                if (V.empty()) V.push_back(1);
                const std::int64_t got[3] = {angle_counter_B(fam, T, p, w, true), angle_counter_C(fam, T, p, w, true),
                                             angle_counter_D(fam, U, V, p, w, true)};
                const std::int64_t want[3] = {oracle::counter_B_brute(fam, T, p, w),
                                              oracle::counter_C_brute(fam, T, p, w),
                                              oracle::counter_D_brute(fam, U, V, p, w)};
                for (int k = 0; k < 3; ++k) {
                    if (got[k] != want[k])
                        return {false, fmt("counter %c at T=%lld p=%lld window [%.4f, %.4f]: %lld != %lld", "BCD"[k],
                                           (long long)T, (long long)p, w.alpha(), w.beta(), (long long)got[k],
                                           (long long)want[k])};
                    ++checks;
                }
            }
    return {true, fmt("%lld counter evaluations agree", (long long)checks)};
}

Outcome setsum_st() {
    std::vector<std::int64_t> I(40);
    for (int i = 0; i < 40; ++i) I[i] = i + 1;
    const auto r = family_average(j_family(), ParamSet::sumset(I, I),
                                  Statistic::angle(AngleWindow(std::numbers::pi / 3, 2 * std::numbers::pi / 3)), 10000);
    return {std::fabs(r.ratio_to_pi - 0.60900) <= 0.03,
            fmt("avg/pi(x) = %.5f against 0.60900 (mu_ST = %.5f)", r.ratio_to_pi, *r.st_mass)};
}

Outcome farey_count() {
    const double n1000 = static_cast<double>(farey_enumerate(1000).size());
    const double rel = std::fabs(n1000 * std::numbers::pi * std::numbers::pi / 6e6 - 1.0);
    if (rel > 0.02) return {false, fmt("#F(1000) = %.0f, relative error %.4f", n1000, rel)};
    for (std::int64_t T = 1; T <= 500; ++T) {
        std::int64_t streamed = 0;
        for_each_farey(T, [&](const RationalParam&) { ++streamed; });
        if (streamed != farey_count_mobius(T))
            return {false, fmt("T=%lld: streamed %lld != Mobius sum %lld", (long long)T, (long long)streamed,
                               (long long)farey_count_mobius(T))};
    }
    return {true, fmt("#F(1000) = %.0f, relative error %.4f; exact for T <= 500", n1000, rel)};
}

std::string without_elapsed(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("elapsed_ms") == std::string::npos) out += line + '\n';
    return out;
}

Outcome determinism() {
    const auto root = fs::temp_directory_path() / fmt("frobenius-determinism-%lld",
                                                       (long long)std::chrono::steady_clock::now().time_since_epoch().count());
    std::string csv[2], js[2];
    const unsigned workers[2] = {1, 4};
    for (int i = 0; i < 2; ++i) {
        auto cfg = preset_config("st-setsum", 1000, std::nullopt, root / std::to_string(workers[i]));
        cfg.workers = workers[i];
        run_experiment(cfg);
        csv[i] = without_elapsed(cfg.csv_path);
        js[i] = without_elapsed(cfg.json_path);
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    const bool ok = !csv[0].empty() && csv[0] == csv[1] && js[0] == js[1];
    return {ok, fmt("csv %s, json %s (%zu csv bytes)", csv[0] == csv[1] ? "identical" : "differ",
                    js[0] == js[1] ? "identical" : "differ", csv[0].size())};
}

Criterion make(int id, const char* name, const char* suite, Outcome (*fn)()) {
    return {id, name, suite, [=] {
                CriterionResult r;
                r.id = id;
                r.name = name;
                r.suite = suite;
                const auto start = std::chrono::steady_clock::now();
                try {
                    const auto o = fn();
                    r.passed = o.passed;
                    r.detail = o.detail;
                } catch (const std::exception& e) {
                    r.passed = false;
                    r.detail = std::string("exception: ") + e.what();
                }
                r.elapsed_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                return r;
            }};
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all = {
        make(1, "trace matches point count", "oracle", trace_oracle),
        make(2, "Hasse bound", "oracle", hasse),
        make(3, "CM curve supersingular ratio", "theorems", deuring),
        make(4, "CM Frobenius field", "theorems", cm_field),
        make(5, "single-curve angle distribution", "theorems", sato_tate_single),
        make(6, "mu_ST closed form", "identities", st_closed_form),
        make(7, "coincidence count Q", "identities", coincidence_oracle),
        make(8, "additive energy V and Parseval", "identities", energy_oracle),
        make(9, "fiber census mod ell", "lemmas", census_equidistribution),
        make(10, "Chebyshev exponential sums", "lemmas", michel),
        make(11, "angle counters vs brute force", "oracle", counters),
        make(12, "sumset family angle average", "theorems", setsum_st),
        make(13, "Farey count", "identities", farey_count),
        make(14, "determinism across workers", "theorems", determinism),
    };
    return all;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracle", "identities", "lemmas", "theorems", "all"};
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& name,
                                       const std::function<void(const CriterionResult&)>& on_result) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw ConfigError("unknown suite \"" + name + "\"");
    std::vector<CriterionResult> out;
    for (const auto& c : acceptance_criteria()) {
        if (name != "all" && c.suite != name) continue;
        out.push_back(c.run());
        if (on_result) on_result(out.back());
    }
    return out;
}

json suite_manifest(const std::string& name, const std::vector<CriterionResult>& results) {
    json items = json::array();
    bool all_passed = true;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        items.push_back({{"id", r.id}, {"name", r.name}, {"suite", r.suite}, {"passed", r.passed},
                         {"detail", r.detail}, {"elapsed_ms", r.elapsed_ms}});
    }
    return {{"suite", name}, {"passed", all_passed}, {"criteria", items}};
}

}  // namespace frobenius
