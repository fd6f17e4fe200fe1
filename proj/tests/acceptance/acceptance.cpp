// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "entroseal/bench/bench.hpp"
#include "entroseal/ese/scheme.hpp"
#include "entroseal/ese/wire.hpp"
#include "entroseal/gf2/verify.hpp"
#include "entroseal/qsimlab/qsim.hpp"
#include "entroseal/random_source.hpp"
#include "entroseal/statlab/checks.hpp"

using namespace entroseal;
using gf2::BitPoly;
using keyexpand::Mode;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x, int digits = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

template <typename V>
size_t passed(const V &reports) {
    return static_cast<size_t>(std::count_if(reports.begin(), reports.end(), [](const auto &r) { return r.pass; }));
}

Outcome collision_bound(const statlab::ClassicalSuite &s, double secs) {
    std::set<std::string> families;
    std::set<std::pair<size_t, size_t>> shapes;
    for (const auto &r : s.collision) {
        families.insert(r.family.substr(0, r.family.find_first_of("-(")));
        shapes.insert({r.params.n, r.params.ell});
    }
    const size_t expected_shapes = 3 + 4 + 5 + 6;
    bool ok = passed(s.collision) == s.collision.size() && shapes.size() == expected_shapes && secs <= 300;
    return {ok, std::to_string(passed(s.collision)) + "/" + std::to_string(s.collision.size()) + " checks over " +
                    std::to_string(shapes.size()) + " (n, ell) shapes and " + std::to_string(families.size()) +
                    " family kinds in " + fixed(secs) + " s"};
}

Outcome indistinguishability(const statlab::ClassicalSuite &s) {
    bool ok = passed(s.indistinguishability) == s.indistinguishability.size() && passed(s.sizing) == s.sizing.size() &&
              !s.sizing.empty();
    return {ok, "chain " + std::to_string(passed(s.indistinguishability)) + "/" +
                    std::to_string(s.indistinguishability.size()) + ", derived sizing (delta <= 8 eps) " +
                    std::to_string(passed(s.sizing)) + "/" + std::to_string(s.sizing.size())};
}

Outcome full_randomization(uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    auto reports = qsimlab::run_qotp_suite(seed);
    double secs = seconds_since(start);
    double worst = 0;
    for (const auto &r : reports) {
        worst = std::max(worst, r.residual);
    }
    bool ok = passed(reports) == reports.size() && reports.size() == 180 && secs <= 120;
    std::ostringstream d;
    d << passed(reports) << "/" << reports.size() << " states, max residual " << std::scientific
      << std::setprecision(2) << worst << ", " << fixed(secs) << " s";
    return {ok, d.str()};
}

Outcome average_over_v(uint64_t seed) {
    auto reports = qsimlab::run_average_over_v_suite(seed);
    double worst = 0;
    for (const auto &r : reports) {
        worst = std::max(worst, r.residual);
    }
    std::ostringstream d;
    d << passed(reports) << "/" << reports.size() << " (state, ell, u) cases, max residual " << std::scientific
      << std::setprecision(2) << worst;
    return {passed(reports) == reports.size() && !reports.empty(), d.str()};
}

Outcome operator_identity(uint64_t seed) {
    auto reports = qsimlab::run_operator_identity_suite(seed, 50);
    bool key_branch = false, tail_branch = false;
    double worst = 0;
    for (const auto &r : reports) {
        key_branch = key_branch || (r.lambda == r.ell && r.ell > r.n);
        tail_branch = tail_branch || r.lambda > r.ell;
        worst = std::max(worst, r.residual / r.scale);
    }
    std::ostringstream d;
    d << passed(reports) << "/" << reports.size() << " functions, both lambda branches "
      << (key_branch && tail_branch ? "covered" : "NOT covered") << ", max relative residual " << std::scientific
      << std::setprecision(2) << worst;
    return {passed(reports) == 50 && reports.size() == 50 && key_branch && tail_branch, d.str()};
}

Outcome trace_bound(uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    bool monotone = false;
    auto reports = qsimlab::run_trace_bound_suite(seed, &monotone);
    double secs = seconds_since(start);
    size_t min_sigma = SIZE_MAX, product = 0, entangled = 0;
    for (const auto &r : reports) {
        min_sigma = std::min(min_sigma, r.sigma.size());
        product += r.product_bound.has_value();
        entangled += r.state_label.rfind("max_entangled", 0) == 0;
    }
    bool ok = passed(reports) == reports.size() && reports.size() == 60 && min_sigma >= 22 && entangled > 0 &&
              product > 0 && secs <= 600;
    return {ok, std::to_string(passed(reports)) + "/" + std::to_string(reports.size()) + " (state, ell) cases, >= " +
                    std::to_string(min_sigma) + " sigma each, " + std::to_string(product) +
                    " product-bound cases, " + std::to_string(entangled) + " maximally entangled, " + fixed(secs) +
                    " s"};
}

Outcome correctness() {
    size_t trials = 0, failures = 0;
    auto check = [&](const BitPoly &key, const BitPoly &x, const ese::SchemeParams &p, const BitPoly &u,
                     const BitPoly &v) {
        ++trials;
        if (ese::decrypt(key, ese::encrypt_with(key, x, p, u, v)) != x) {
            ++failures;
        }
    };
    for (size_t n = 1; n <= 4; ++n) {
        for (size_t ell = 1; ell <= n; ++ell) {
            auto p = ese::SchemeParams::with_key_length(n, ell, Mode::Classical);
            const auto &e = p.expansion;
            for (uint64_t k = 0; k < (uint64_t{1} << ell); ++k) {
                for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
                    for (uint64_t u = 0; u < (uint64_t{1} << e.lambda); ++u) {
                        for (uint64_t v = 0; v < (uint64_t{1} << e.tail_len); ++v) {
                            check(BitPoly::from_u64(k, ell), BitPoly::from_u64(x, n), p,
                                  BitPoly::from_u64(u, e.lambda), BitPoly::from_u64(v, e.tail_len));
                        }
                    }
                }
            }
        }
    }
    const size_t exhaustive = trials;
    RandomSource rng = RandomSource::seeded(2718);
    for (size_t n : {64, 1024}) {
        const std::vector<size_t> ells = {1, n / 4, n / 2 - 1, n / 2, n / 2 + 1, n / 2 + 13, 3 * n / 4, n - 1, n};
        for (size_t i = 0; i < 10000; ++i) {
            auto p = ese::SchemeParams::with_key_length(n, ells[i % ells.size()], Mode::Classical);
            BitPoly key = ese::gen(p, rng);
            BitPoly x = rng.bits(n);
            auto [u, v] = keyexpand::sample_public_randomness(p.expansion, rng);
            check(key, x, p, u, v);
        }
    }
    return {failures == 0, std::to_string(exhaustive) + " exhaustive (n <= 4) + " +
                               std::to_string(trials - exhaustive) + " random (n = 64, 1024) round trips, " +
                               std::to_string(failures) + " failures"};
}

Outcome factor_two() {
    std::ostringstream d;
    bool ok = true;
    for (gf2::Backend backend : {gf2::Backend::Schoolbook, gf2::Backend::Karatsuba}) {
        d << gf2::to_string(backend) << " and-ratio";
        for (size_t size : {128, 512, 2048}) {
            auto p = bench::bench_params(size, Mode::Quantum, 0, 1.0 / 32);
            auto ours = bench::count_expansion(bench::Method::AffineThisWork, p, backend);
            auto base = bench::count_expansion(bench::Method::FullMulAmbainisSmith, p, backend);
            double ratio = static_cast<double>(base.ands) / static_cast<double>(ours.ands);
            ok = ok && ratio >= 2.0;
            d << " " << size << ":" << bench::three_sig(ratio) << (ratio >= 2.0 ? "" : "(<2)");
        }
        d << "; ";
    }
    auto p = bench::bench_params(32768, Mode::Quantum, 0, 1.0 / 32);
    auto setup = std::chrono::steady_clock::now();
    gf2::find_irreducible(p.lambda);
    gf2::find_irreducible(2 * p.n);
    double setup_secs = seconds_since(setup);
    auto ours = bench::time_expansion(bench::Method::AffineThisWork, p, gf2::Backend::Karatsuba, 101, 5);
    auto base = bench::time_expansion(bench::Method::FullMulAmbainisSmith, p, gf2::Backend::Karatsuba, 101, 5);
    double wall = base.timing->median_ns / ours.timing->median_ns;
    ok = ok && wall >= 1.5;
    d << "wall-clock median ratio at 2n = 32768 (karatsuba, 101 reps): " << bench::three_sig(wall) << " ("
      << bench::three_sig(base.timing->median_ns / 1e3) << " us vs " << bench::three_sig(ours.timing->median_ns / 1e3)
      << " us; modulus setup " << fixed(setup_secs, 0) << " s excluded)";
    return {ok, d.str()};
}

Outcome gf2_suites() {
    auto checks = gf2::run_gf2_suite(9, 1000);
    size_t cases = 0, failures = 0;
    for (const auto &c : checks) {
        cases += c.cases;
        failures += c.failures;
    }
    return {gf2::suite_passed(checks),
            std::to_string(checks.size()) + " checks, " + std::to_string(cases) + " cases, " +
                std::to_string(failures) + " failures (word kernel " + std::string(gf2::word_kernel()) + ")"};
}

Outcome wire_format() {
    RandomSource rng = RandomSource::seeded(42);
    auto p = ese::SchemeParams::with_key_length(16, 9, Mode::Classical);
    BitPoly key = ese::gen(p, rng);
    BitPoly x = rng.bits(16);
    std::vector<uint8_t> golden = ese::serialize(ese::encrypt(key, x, p, rng));
    std::ostringstream hex;
    for (uint8_t b : golden) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
    }
    const bool golden_ok = hex.str() == "455345310100100000000000000009000000000000000a014e7ed6";

    std::vector<std::vector<uint8_t>> seeds;
    RandomSource src = RandomSource::seeded(77);
    for (Mode mode : {Mode::Classical, Mode::Quantum}) {
        for (size_t n : {1, 3, 8, 17, 64, 130}) {
            size_t out = mode == Mode::Quantum ? 2 * n : n;
            auto sp = ese::SchemeParams::with_key_length(n, 1 + (n * 5) % out, mode);
            BitPoly k = ese::gen(sp, src);
            seeds.push_back(ese::serialize(mode == Mode::Quantum ? ese::quantum_keytag(k, sp, src)
                                                                 : ese::encrypt(k, src.bits(n), sp, src)));
        }
    }
    const std::set<ese::WireError> declared = {ese::WireError::BadMagic, ese::WireError::BadVersion,
                                               ese::WireError::BadMode, ese::WireError::Truncated,
                                               ese::WireError::InconsistentLength};
    std::mt19937_64 fuzz(1234);
    size_t accepted = 0, rejected = 0, violations = 0;
    std::set<ese::WireError> seen;
    const size_t cases = 100000;
    for (size_t i = 0; i < cases; ++i) {
        std::vector<uint8_t> b;
        if (i % 10 == 9) {
            b.resize(fuzz() % 80);
            for (auto &byte : b) {
                byte = static_cast<uint8_t>(fuzz());
            }
            if (i % 20 == 9 && b.size() >= 4) {
                std::copy_n("ESE1", 4, b.begin());
            }
        } else {
            b = seeds[fuzz() % seeds.size()];
            int edits = 1 + static_cast<int>(fuzz() % 4);
            for (int e = 0; e < edits && !b.empty(); ++e) {
                switch (fuzz() % 5) {
                    case 0:
                        b[fuzz() % b.size()] ^= static_cast<uint8_t>(1u << (fuzz() % 8));
                        break;
                    case 1:
                        b[fuzz() % b.size()] = static_cast<uint8_t>(fuzz());
                        break;
                    case 2:
                        b.resize(fuzz() % (b.size() + 1));
                        break;
                    case 3:
                        b.push_back(static_cast<uint8_t>(fuzz()));
                        break;
                    default:
                        // Header fields: n and ell words.
                        b[std::min<size_t>(b.size() - 1, 6 + fuzz() % 16)] = static_cast<uint8_t>(fuzz());
                        break;
                }
            }
        }
        try {
            ese::Ciphertext c = ese::deserialize(b);
            ++accepted;
            if (ese::serialize(c) != b) {
                ++violations;
            }
        } catch (const ese::FormatError &e) {
            ++rejected;
            seen.insert(e.code());
            if (!declared.count(e.code())) {
                ++violations;
            }
        } catch (...) {
            ++violations;
        }
    }
    bool ok = golden_ok && violations == 0 && seen == declared;
    return {ok, std::string("golden vector ") + (golden_ok ? "matches" : "DIFFERS") + "; " + std::to_string(cases) +
                    " fuzz cases: " + std::to_string(accepted) + " canonical accepts, " + std::to_string(rejected) +
                    " rejects across " + std::to_string(seen.size()) + " codes, " + std::to_string(violations) +
                    " violations"};
}

}  // namespace

int main() {
    const uint64_t seed = 20241018;
    bool all = true;
    auto report = [&all](int id, const std::string &name, const std::function<Outcome()> &run) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << std::setw(2) << id << " " << name << ": " << o.detail
                  << std::endl;
    };

    auto start = std::chrono::steady_clock::now();
    statlab::ClassicalSuite classical = statlab::run_classical_suite(3, 6);
    double classical_secs = seconds_since(start);

    report(1, "classical collision bound", [&] { return collision_bound(classical, classical_secs); });
    report(2, "indistinguishability chain", [&] { return indistinguishability(classical); });
    report(3, "full quantum one-time pad randomization", [&] { return full_randomization(seed); });
    report(4, "averaging over v decouples", [&] { return average_over_v(seed); });
    report(5, "operator identity", [&] { return operator_identity(seed); });
    report(6, "per-sigma trace-norm bound", [&] { return trace_bound(seed); });
    report(7, "decryption inverts encryption", correctness);
    report(8, "factor-2 expansion cost", factor_two);
    report(9, "gf2 field axioms and backend equivalence", gf2_suites);
    report(10, "wire format golden vector and fuzzing", wire_format);
    return all ? 0 : 1;
}
