#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entroseal/gf2/clmul.hpp"
#include "entroseal/keyexpand/expansion.hpp"
#include "json.hpp"

namespace entroseal::bench {

/// AffineThisWork: k ‖ ((u·k)_lsb ⊕ v) with one product in GF(2^lambda).
/// FullMulDodisSmith: k·i in GF(2^n) (classical).
/// FullMulAmbainisSmith: k·alpha in GF(2^2n) (quantum).
enum class Method {
    AffineThisWork,
    FullMulDodisSmith,
    FullMulAmbainisSmith,
};

std::string_view to_string(Method method);
/// Accepts "affine", "dodis-smith", "ambainis-smith".
Method parse_method(std::string_view name);
/// Methods that apply to a mode: the affine expansion and that mode's baseline.
std::vector<Method> methods_for(keyexpand::Mode mode);

/// Degree of the field the method multiplies in; 0 when the affine expansion needs no product.
size_t field_degree(Method method, const keyexpand::ExpansionParams &params);

/// Gate count of one expansion: one field product plus tail_len XORs for the affine method, one product
/// for the baselines. Fast mode evaluates the cost model; Counting mode executes bit-serially on
/// seeded operands and tallies every gate. Precondition error on a method/mode mismatch.
gf2::OpCount count_expansion(Method method, const keyexpand::ExpansionParams &params, gf2::Backend backend,
                             gf2::ExecMode mode = gf2::ExecMode::Fast, uint64_t seed = 0);

inline constexpr size_t kMinReps = 31;

struct Timing {
    double median_ns = 0;
    double q1_ns = 0;
    double q3_ns = 0;
    size_t reps = 0;
    /// Median within 100 ticks of the measured clock resolution.
    bool timer_warning = false;
};

struct BenchRecord {
    Method method = Method::AffineThisWork;
    gf2::Backend backend = gf2::Backend::Karatsuba;
    keyexpand::Mode mode = keyexpand::Mode::Quantum;
    size_t n = 0;
    size_t ell = 0;
    size_t field_degree = 0;
    gf2::OpCount cost;
    std::optional<Timing> timing;
};

/// Counts only.
BenchRecord count_record(Method method, const keyexpand::ExpansionParams &params, gf2::Backend backend);

/// Median and quartiles of single-expansion wall time on a monotonic clock. Inputs are drawn fresh
/// for every repetition outside the timed region; field setup and 3 warmup runs are excluded.
/// Requires reps >= kMinReps.
BenchRecord time_expansion(Method method, const keyexpand::ExpansionParams &params, gf2::Backend backend,
                           size_t reps, uint64_t seed);

/// CPU model, compiler, build type and word kernel.
std::string environment_fingerprint();

struct BenchConfig {
    /// Pad lengths in bits: 2n for quantum mode, n for classical mode.
    std::vector<size_t> sizes = {128, 512, 2048};
    keyexpand::Mode mode = keyexpand::Mode::Quantum;
    double t = 0;
    double epsilon = 1.0 / 32;
    std::vector<Method> methods;  // empty: methods_for(mode)
    std::vector<gf2::Backend> backends = {gf2::Backend::Schoolbook, gf2::Backend::Karatsuba};
    size_t reps = kMinReps;
    bool time = true;
    uint64_t seed = 1;
};

/// Key length from the scheme's sizing rule for the pad length `size`.
keyexpand::ExpansionParams bench_params(size_t size, keyexpand::Mode mode, double t, double epsilon);

std::vector<BenchRecord> run_bench(const BenchConfig &config);

/// baseline / affine for the same mode, n and backend; nullopt for affine rows or when no partner exists.
std::optional<double> and_ratio(const BenchRecord &record, const std::vector<BenchRecord> &all);
std::optional<double> time_ratio(const BenchRecord &record, const std::vector<BenchRecord> &all);

/// Three significant digits, e.g. 2.02, 12.3, 0.500.
std::string three_sig(double value);

/// Fixed-width table, one row per record in input order.
std::string emit_table(const std::vector<BenchRecord> &records);
nlohmann::json emit_json(const std::vector<BenchRecord> &records, const std::string &fingerprint);

}  // namespace entroseal::bench
