#include "entroseal/statlab/checks.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "entroseal/error.hpp"
#include "entroseal/ese/scheme.hpp"

namespace entroseal::statlab {

namespace {

using keyexpand::ExpansionParams;

constexpr size_t kDenseBits = 20;
constexpr uint64_t kParallelTerms = uint64_t{1} << 20;

// Ciphertext weights, dense for small spaces.
class Accumulator {
   public:
    explicit Accumulator(size_t bits) : dense_(bits <= kDenseBits) {
        if (dense_) {
            counts_.assign(size_t{1} << bits, 0);
        }
    }
    void add(uint64_t c, uint64_t w) {
        if (dense_) {
            counts_[c] += w;
        } else {
            sparse_[c] += w;
        }
    }
    void merge(const Accumulator &other) {
        if (dense_) {
            for (size_t i = 0; i < counts_.size(); ++i) {
                counts_[i] += other.counts_[i];
            }
        } else {
            for (auto [c, w] : other.sparse_) {
                sparse_[c] += w;
            }
        }
    }
    std::vector<std::pair<uint64_t, uint64_t>> entries() const {
        std::vector<std::pair<uint64_t, uint64_t>> out;
        if (dense_) {
            for (size_t i = 0; i < counts_.size(); ++i) {
                if (counts_[i] != 0) {
                    out.emplace_back(i, counts_[i]);
                }
            }
        } else {
            out.assign(sparse_.begin(), sparse_.end());
        }
        return out;
    }

   private:
    bool dense_;
    std::vector<uint64_t> counts_;
    std::unordered_map<uint64_t, uint64_t> sparse_;
};

std::string rational_text(const Rational &r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

nlohmann::json params_json(const ExpansionParams &p) {
    return {{"n", p.n}, {"ell", p.ell}, {"lambda", p.lambda}, {"tail_len", p.tail_len}};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

uint64_t default_budget() {
    const char *env = std::getenv("ENTROSEAL_BUDGET");
    if (env == nullptr || *env == '\0') {
        return kDefaultBudget;
    }
    uint64_t value = 0;
    const char *end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    require(ec == std::errc() && ptr == end && value > 0, ErrorKind::Configuration,
            std::string("ENTROSEAL_BUDGET must be a positive integer, got \"") + env + "\"");
    return value;
}

Distribution ciphertext_distribution(const ExpansionParams &p, const Distribution &plaintext, uint64_t budget) {
    require(p.mode == keyexpand::Mode::Classical, ErrorKind::Precondition,
            "ciphertext enumeration needs classical parameters");
    require(plaintext.nbits() == p.n, ErrorKind::Precondition, "plaintext length differs from n");
    const size_t rand_bits = p.ell + p.lambda + p.tail_len;
    const size_t space_bits = p.lambda + p.tail_len + p.n;
    const uint64_t support = plaintext.size();
    bool fits = rand_bits < 63 && support <= (std::numeric_limits<uint64_t>::max() >> rand_bits);
    uint64_t terms = fits ? support << rand_bits : std::numeric_limits<uint64_t>::max();
    if (!fits || terms > budget) {
        std::ostringstream os;
        os << "enumeration needs 2^" << rand_bits << " * " << support << " = ";
        if (fits) {
            os << terms;
        } else {
            os << "more than 2^63";
        }
        os << " weighted terms, budget is " << budget << " (raise it with ENTROSEAL_BUDGET)";
        fail(ErrorKind::Resource, os.str());
    }
    require(space_bits <= 63 && std::bit_width(plaintext.total()) + rand_bits <= 63, ErrorKind::Resource,
            "ciphertext weights overflow 64 bits");

    const gf2::FieldSpec &field = gf2::find_irreducible(p.lambda);
    const uint64_t keys = uint64_t{1} << p.ell;
    const uint64_t us = uint64_t{1} << p.lambda;
    const uint64_t vs = uint64_t{1} << p.tail_len;
    const size_t payload_shift = p.lambda + p.tail_len;
    const gf2::BitPoly zero_v(p.tail_len);

    auto enumerate = [&](uint64_t k_begin, uint64_t k_end, Accumulator &acc) {
        for (uint64_t k = k_begin; k < k_end; ++k) {
            gf2::BitPoly key = gf2::BitPoly::from_u64(k, p.ell);
            for (uint64_t u = 0; u < us; ++u) {
                uint64_t pad0 = keyexpand::expand_affine(key, gf2::BitPoly::from_u64(u, p.lambda), zero_v, p, field,
                                                         gf2::Backend::Karatsuba)
                                    .to_u64();
                for (uint64_t v = 0; v < vs; ++v) {
                    uint64_t pad = pad0 ^ (v << p.ell);
                    uint64_t head = u | (v << p.lambda);
                    for (size_t i = 0; i < plaintext.size(); ++i) {
                        acc.add(head | ((plaintext.outcomes()[i] ^ pad) << payload_shift), plaintext.weights()[i]);
                    }
                }
            }
        }
    };

    Accumulator total(space_bits);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (terms < kParallelTerms || workers == 1 || keys == 1) {
        enumerate(0, keys, total);
    } else {
        // Integer weights make the merged result independent of the schedule.
        workers = static_cast<unsigned>(std::min<uint64_t>(workers, keys));
        std::vector<Accumulator> partial(workers, Accumulator(space_bits));
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] { enumerate(keys * w / workers, keys * (w + 1) / workers, partial[w]); });
        }
        for (auto &t : threads) {
            t.join();
        }
        for (const auto &part : partial) {
            total.merge(part);
        }
    }
    return Distribution(space_bits, total.entries());
}

CollisionReport check_collision_bound(const ExpansionParams &p, const NamedDistribution &plaintext,
                                      uint64_t budget) {
    CollisionReport r;
    r.family = plaintext.name;
    r.params = p;
    r.in_proof_branch = p.lambda == p.ell;
    r.h2_plaintext = collision_entropy(plaintext.dist);
    r.lhs = collision_probability(ciphertext_distribution(p, plaintext.dist, budget));
    Rational scale(BigInt(1), BigInt(1) << (2 * p.n));
    Rational gain(BigInt(1) << (p.n - p.ell), BigInt(1));
    r.bound = scale * (1 + gain * collision_probability(plaintext.dist));
    r.pass = r.lhs <= r.bound;
    return r;
}

IndistinguishabilityReport check_indistinguishability(const ExpansionParams &p, const NamedDistribution &plaintext,
                                                      uint64_t budget) {
    IndistinguishabilityReport r;
    r.family = plaintext.name;
    r.params = p;
    Distribution cipher = ciphertext_distribution(p, plaintext.dist, budget);
    r.space_bits = cipher.nbits();
    r.collision = collision_probability(cipher);
    r.delta = distance_to_uniform(cipher);
    Rational excess = (r.collision * (BigInt(1) << r.space_bits) - 1) / 2;
    if (excess < 0) {
        excess = 0;
    }
    r.eps_star = std::sqrt(to_double(excess));
    r.pass = r.delta * r.delta <= excess || to_double(r.delta) <= r.eps_star + 1e-12;
    return r;
}

SizingReport check_derived_sizing(size_t n, size_t t, double epsilon, const NamedDistribution &plaintext,
                                  uint64_t budget) {
    require(min_entropy(plaintext.dist) >= static_cast<double>(t) - 1e-9, ErrorKind::Precondition,
            "plaintext min-entropy is below t");
    SizingReport r;
    r.n = n;
    r.t = t;
    r.epsilon = epsilon;
    r.family = plaintext.name;
    ese::SchemeParams params = ese::SchemeParams::derive(n, static_cast<double>(t), epsilon, keyexpand::Mode::Classical);
    r.ell = params.ell;
    r.delta = distance_to_uniform(ciphertext_distribution(params.expansion, plaintext.dist, budget));
    r.pass = to_double(r.delta) <= 8 * epsilon;
    return r;
}

bool ClassicalSuite::pass() const {
    auto ok = [](const auto &r) { return r.pass; };
    return std::all_of(collision.begin(), collision.end(), ok) &&
           std::all_of(indistinguishability.begin(), indistinguishability.end(), ok) &&
           std::all_of(sizing.begin(), sizing.end(), ok);
}

ClassicalSuite run_classical_suite(size_t n_min, size_t n_max, uint64_t budget) {
    static const double kEpsilons[] = {1.0, 0.5, 0.3, 0.25, 0.125, 0.0625, 0.03125};
    ClassicalSuite suite;
    for (size_t n = n_min; n <= n_max; ++n) {
        std::vector<NamedDistribution> families = plaintext_families(n);
        for (size_t ell = 1; ell <= n; ++ell) {
            ExpansionParams p = ExpansionParams::make(n, ell, keyexpand::Mode::Classical);
            for (const auto &f : families) {
                suite.collision.push_back(check_collision_bound(p, f, budget));
                suite.indistinguishability.push_back(check_indistinguishability(p, f, budget));
            }
        }
        for (size_t t = 0; t <= n; ++t) {
            for (double eps : kEpsilons) {
                try {
                    ese::derive_key_length(n, static_cast<double>(t), eps, keyexpand::Mode::Classical);
                } catch (const Error &) {
                    continue;
                }
                suite.sizing.push_back(check_derived_sizing(n, t, eps, {"flat-t" + std::to_string(t), flat(n, t)}, budget));
                suite.sizing.push_back(check_derived_sizing(n, t, eps, {"uniform", uniform(n)}, budget));
            }
        }
    }
    return suite;
}

nlohmann::json to_json(const CollisionReport &r) {
    return {{"check", "collision_bound"},
            {"family", r.family},
            {"params", params_json(r.params)},
            {"in_proof_branch", r.in_proof_branch},
            {"h2_plaintext", r.h2_plaintext},
            {"lhs", to_double(r.lhs)},
            {"lhs_exact", rational_text(r.lhs)},
            {"bound", to_double(r.bound)},
            {"bound_exact", rational_text(r.bound)},
            {"pass", r.pass}};
}

nlohmann::json to_json(const IndistinguishabilityReport &r) {
    return {{"check", "indistinguishability"},
            {"family", r.family},
            {"params", params_json(r.params)},
            {"space_bits", r.space_bits},
            {"collision", to_double(r.collision)},
            {"delta", to_double(r.delta)},
            {"delta_exact", rational_text(r.delta)},
            {"eps_star", r.eps_star},
            {"pass", r.pass}};
}

nlohmann::json to_json(const SizingReport &r) {
    return {{"check", "derived_sizing"},
            {"family", r.family},
            {"n", r.n},
            {"t", r.t},
            {"epsilon", r.epsilon},
            {"ell", r.ell},
            {"delta", to_double(r.delta)},
            {"delta_exact", rational_text(r.delta)},
            {"bound", 8 * r.epsilon},
            {"pass", r.pass}};
}

nlohmann::json to_json(const ClassicalSuite &s) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &r : s.collision) {
        checks.push_back(to_json(r));
    }
    for (const auto &r : s.indistinguishability) {
        checks.push_back(to_json(r));
    }
    for (const auto &r : s.sizing) {
        checks.push_back(to_json(r));
    }
    return {{"suite", "classical"}, {"pass", s.pass()}, {"checks", checks}};
}

std::string to_text(const ClassicalSuite &s) {
    std::ostringstream os;
    auto mark = [](bool pass) { return pass ? "ok  " : "FAIL"; };
    for (const auto &r : s.collision) {
        os << mark(r.pass) << " collision_bound n=" << r.params.n << " ell=" << r.params.ell << " " << r.family
           << " lhs=" << fmt(to_double(r.lhs)) << " bound=" << fmt(to_double(r.bound))
           << (r.in_proof_branch ? "" : " (lambda != ell: outside the proof's branch)") << "\n";
    }
    for (const auto &r : s.indistinguishability) {
        os << mark(r.pass) << " indistinguishability n=" << r.params.n << " ell=" << r.params.ell << " " << r.family
           << " delta=" << fmt(to_double(r.delta)) << " eps*=" << fmt(r.eps_star) << "\n";
    }
    for (const auto &r : s.sizing) {
        os << mark(r.pass) << " derived_sizing n=" << r.n << " t=" << r.t << " eps=" << fmt(r.epsilon)
           << " ell=" << r.ell << " " << r.family << " delta=" << fmt(to_double(r.delta))
           << " 8eps=" << fmt(8 * r.epsilon) << "\n";
    }
    size_t total = s.collision.size() + s.indistinguishability.size() + s.sizing.size();
    os << (s.pass() ? "classical suite passed: " : "classical suite FAILED: ") << total << " checks\n";
    return os.str();
}

}  // namespace entroseal::statlab
