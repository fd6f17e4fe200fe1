#include "entroseal/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "entroseal/error.hpp"
#include "entroseal/ese/scheme.hpp"
#include "entroseal/gf2/field.hpp"
#include "entroseal/random_source.hpp"

#ifndef ENTROSEAL_BUILD_TYPE
#define ENTROSEAL_BUILD_TYPE "unknown"
#endif

namespace entroseal::bench {

using gf2::Backend;
using gf2::BitPoly;
using gf2::OpCount;
using keyexpand::ExpansionParams;
using keyexpand::Mode;

std::string_view to_string(Method method) {
    switch (method) {
        case Method::AffineThisWork:
            return "affine";
        case Method::FullMulDodisSmith:
            return "dodis-smith";
        case Method::FullMulAmbainisSmith:
            return "ambainis-smith";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::AffineThisWork, Method::FullMulDodisSmith, Method::FullMulAmbainisSmith}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    fail(ErrorKind::Configuration,
         "unknown method '" + std::string(name) + "' (expected affine, dodis-smith or ambainis-smith)");
}

std::vector<Method> methods_for(Mode mode) {
    if (mode == Mode::Classical) {
        return {Method::AffineThisWork, Method::FullMulDodisSmith};
    }
    return {Method::AffineThisWork, Method::FullMulAmbainisSmith};
}

namespace {

void check_method_mode(Method method, const ExpansionParams &p) {
    if (method == Method::FullMulDodisSmith) {
        require(p.mode == Mode::Classical, ErrorKind::Precondition, "dodis-smith expansion needs classical parameters");
    }
    if (method == Method::FullMulAmbainisSmith) {
        require(p.mode == Mode::Quantum, ErrorKind::Precondition, "ambainis-smith expansion needs quantum parameters");
    }
}

struct Inputs {
    BitPoly k;
    BitPoly u;  // or the baseline's multiplier
    BitPoly v;
};

Inputs draw_inputs(Method method, const ExpansionParams &p, RandomSource &rng) {
    Inputs in;
    in.k = rng.bits(p.ell);
    if (method == Method::AffineThisWork) {
        auto [u, v] = keyexpand::sample_public_randomness(p, rng);
        in.u = std::move(u);
        in.v = std::move(v);
    } else {
        in.u = rng.bits(field_degree(method, p));
    }
    return in;
}

BitPoly run_once(Method method, const ExpansionParams &p, const Inputs &in, Backend backend) {
    switch (method) {
        case Method::AffineThisWork:
            return keyexpand::expand_affine(in.k, in.u, in.v, p, backend);
        case Method::FullMulDodisSmith:
            return keyexpand::expand_fullmul_classical(in.k, in.u, p, backend);
        case Method::FullMulAmbainisSmith:
            return keyexpand::expand_fullmul_quantum(in.k, in.u, p, backend);
    }
    return {};
}

double quantile(const std::vector<double> &sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double clock_tick_ns() {
    using clock = std::chrono::steady_clock;
    double best = INFINITY;
    for (int i = 0; i < 10; ++i) {
        auto a = clock::now();
        auto b = clock::now();
        while (b == a) {
            b = clock::now();
        }
        best = std::min(best, std::chrono::duration<double, std::nano>(b - a).count());
    }
    return best;
}

}  // namespace

size_t field_degree(Method method, const ExpansionParams &p) {
    switch (method) {
        case Method::AffineThisWork:
            return p.tail_len == 0 ? 0 : p.lambda;
        case Method::FullMulDodisSmith:
            return p.n;
        case Method::FullMulAmbainisSmith:
            return 2 * p.n;
    }
    return 0;
}

OpCount count_expansion(Method method, const ExpansionParams &p, Backend backend, gf2::ExecMode mode,
                        uint64_t seed) {
    check_method_mode(method, p);
    const size_t degree = field_degree(method, p);
    if (degree == 0) {
        return {};
    }
    const gf2::FieldSpec &field = gf2::find_irreducible(degree);
    OpCount cost;
    if (mode == gf2::ExecMode::Fast) {
        cost = gf2::gf_mul_cost(field, backend);
    } else {
        RandomSource rng = RandomSource::seeded(seed);
        BitPoly a = rng.bits(degree);
        BitPoly b = rng.bits(degree);
        cost = gf2::gf_mul(a, b, field, backend, gf2::ExecMode::Counting).cost;
    }
    if (method == Method::AffineThisWork) {
        cost.xors += p.tail_len;
    }
    return cost;
}

BenchRecord count_record(Method method, const ExpansionParams &p, Backend backend) {
    BenchRecord r;
    r.method = method;
    r.backend = backend;
    r.mode = p.mode;
    r.n = p.n;
    r.ell = p.ell;
    r.field_degree = field_degree(method, p);
    r.cost = count_expansion(method, p, backend);
    return r;
}

BenchRecord time_expansion(Method method, const ExpansionParams &p, Backend backend, size_t reps, uint64_t seed) {
    require(reps >= kMinReps, ErrorKind::Precondition, "timing needs at least " + std::to_string(kMinReps) + " reps");
    BenchRecord r = count_record(method, p, backend);
    if (r.field_degree > 0) {
        gf2::find_irreducible(r.field_degree);
    }
    RandomSource rng = RandomSource::seeded(seed);
    for (int i = 0; i < 3; ++i) {
        Inputs in = draw_inputs(method, p, rng);
        volatile size_t sink = run_once(method, p, in, backend).nbits();
        (void)sink;
    }
    std::vector<double> samples;
    samples.reserve(reps);
    for (size_t i = 0; i < reps; ++i) {
        Inputs in = draw_inputs(method, p, rng);
        auto start = std::chrono::steady_clock::now();
        BitPoly out = run_once(method, p, in, backend);
        auto stop = std::chrono::steady_clock::now();
        volatile uint64_t sink = out.words().empty() ? 0 : out.words()[0];
        (void)sink;
        samples.push_back(std::chrono::duration<double, std::nano>(stop - start).count());
    }
    std::sort(samples.begin(), samples.end());
    Timing t;
    t.reps = reps;
    t.median_ns = std::max(quantile(samples, 0.5), 1.0);
    t.q1_ns = quantile(samples, 0.25);
    t.q3_ns = quantile(samples, 0.75);
    t.timer_warning = t.median_ns < 100 * clock_tick_ns();
    r.timing = t;
    return r;
}

std::string environment_fingerprint() {
    std::string cpu = "unknown cpu";
    std::ifstream info("/proc/cpuinfo");
    for (std::string line; std::getline(info, line);) {
        if (line.rfind("model name", 0) == 0) {
            auto colon = line.find(':');
            if (colon != std::string::npos) {
                cpu = line.substr(line.find_first_not_of(' ', colon + 1));
            }
            break;
        }
    }
    std::ostringstream os;
    os << cpu << "; " <<
#if defined(__clang__)
        "clang "
#elif defined(__GNUC__)
        "gcc "
#endif
       << __VERSION__ << "; " << ENTROSEAL_BUILD_TYPE << "; kernel " << gf2::word_kernel();
    return os.str();
}

ExpansionParams bench_params(size_t size, Mode mode, double t, double epsilon) {
    size_t n = size;
    if (mode == Mode::Quantum) {
        require(size % 2 == 0 && size >= 2, ErrorKind::Precondition, "quantum pad length must be even");
        n = size / 2;
    }
    return ese::SchemeParams::derive(n, t, epsilon, mode).expansion;
}

std::vector<BenchRecord> run_bench(const BenchConfig &config) {
    std::vector<Method> methods = config.methods.empty() ? methods_for(config.mode) : config.methods;
    std::vector<BenchRecord> out;
    for (size_t size : config.sizes) {
        ExpansionParams p = bench_params(size, config.mode, config.t, config.epsilon);
        for (Backend backend : config.backends) {
            for (Method method : methods) {
                if (config.time) {
                    out.push_back(time_expansion(method, p, backend, config.reps, config.seed));
                } else {
                    out.push_back(count_record(method, p, backend));
                }
            }
        }
    }
    return out;
}

namespace {

const BenchRecord *affine_partner(const BenchRecord &r, const std::vector<BenchRecord> &all) {
    if (r.method == Method::AffineThisWork) {
        return nullptr;
    }
    for (const auto &o : all) {
        if (o.method == Method::AffineThisWork && o.mode == r.mode && o.n == r.n && o.backend == r.backend) {
            return &o;
        }
    }
    return nullptr;
}

}  // namespace

std::optional<double> and_ratio(const BenchRecord &r, const std::vector<BenchRecord> &all) {
    const BenchRecord *ours = affine_partner(r, all);
    if (ours == nullptr || ours->cost.ands == 0) {
        return std::nullopt;
    }
    return static_cast<double>(r.cost.ands) / static_cast<double>(ours->cost.ands);
}

std::optional<double> time_ratio(const BenchRecord &r, const std::vector<BenchRecord> &all) {
    const BenchRecord *ours = affine_partner(r, all);
    if (ours == nullptr || !r.timing || !ours->timing) {
        return std::nullopt;
    }
    return r.timing->median_ns / ours->timing->median_ns;
}

std::string three_sig(double value) {
    if (!std::isfinite(value)) {
        return "-";
    }
    if (value == 0) {
        return "0.00";
    }
    int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(value))));
    int decimals = std::max(0, 2 - magnitude);
    // Rounding can carry into the next decade (9.996 -> 10.0).
    double rounded = std::round(value * std::pow(10.0, decimals)) / std::pow(10.0, decimals);
    if (std::fabs(rounded) >= std::pow(10.0, magnitude + 1)) {
        decimals = std::max(0, decimals - 1);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string emit_table(const std::vector<BenchRecord> &records) {
    std::ostringstream os;
    auto row = [&os](const std::vector<std::string> &cells) {
        static const int widths[] = {-15, -11, -9, 7, 7, 7, 12, 12, 13, 11, 9, 9};
        for (size_t i = 0; i < cells.size(); ++i) {
            int w = widths[i];
            if (i > 0) {
                os << ' ';
            }
            os << (w < 0 ? std::left : std::right) << std::setw(std::abs(w)) << cells[i];
        }
        os << '\n';
    };
    row({"method", "backend", "mode", "n", "ell", "field", "ands", "xors", "median_ns", "iqr_ns", "and_ratio",
         "time_ratio"});
    for (const auto &r : records) {
        auto opt = [](const std::optional<double> &x) { return x ? three_sig(*x) : std::string("-"); };
        std::string median = "-", iqr = "-";
        if (r.timing) {
            median = three_sig(r.timing->median_ns) + (r.timing->timer_warning ? "*" : "");
            iqr = three_sig(r.timing->q3_ns - r.timing->q1_ns);
        }
        row({std::string(to_string(r.method)), std::string(gf2::to_string(r.backend)),
             std::string(keyexpand::to_string(r.mode)), std::to_string(r.n), std::to_string(r.ell),
             std::to_string(r.field_degree), std::to_string(r.cost.ands), std::to_string(r.cost.xors), median, iqr,
             opt(and_ratio(r, records)), opt(time_ratio(r, records))});
    }
    return os.str();
}

nlohmann::json emit_json(const std::vector<BenchRecord> &records, const std::string &fingerprint) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : records) {
        nlohmann::json j = {{"method", to_string(r.method)},
                            {"backend", gf2::to_string(r.backend)},
                            {"mode", keyexpand::to_string(r.mode)},
                            {"n", r.n},
                            {"ell", r.ell},
                            {"field_degree", r.field_degree},
                            {"ands", r.cost.ands},
                            {"xors", r.cost.xors}};
        if (r.timing) {
            j["timing"] = {{"median_ns", r.timing->median_ns},
                           {"q1_ns", r.timing->q1_ns},
                           {"q3_ns", r.timing->q3_ns},
                           {"reps", r.timing->reps},
                           {"timer_warning", r.timing->timer_warning}};
        }
        if (auto x = and_ratio(r, records)) {
            j["and_ratio"] = *x;
        }
        if (auto x = time_ratio(r, records)) {
            j["time_ratio"] = *x;
        }
        rows.push_back(j);
    }
    return {{"environment", fingerprint}, {"records", rows}};
}

}  // namespace entroseal::bench
