#include "entroseal/gf2/verify.hpp"

#include <algorithm>
#include <sstream>

#include "entroseal/gf2/field.hpp"
#include "entroseal/random_source.hpp"

namespace entroseal::gf2 {

namespace {

// Bit-by-bit long division using only the modulus bits.
BitPoly long_division(BitPoly p, const BitPoly &modulus, size_t lambda) {
    std::vector<size_t> taps;
    for (size_t j = 0; j < lambda; ++j) {
        if (modulus.bit(j)) {
            taps.push_back(j);
        }
    }
    for (size_t i = p.nbits(); i-- > lambda;) {
        if (p.bit(i)) {
            p.flip_bit(i);
            for (size_t j : taps) {
                p.flip_bit(i - lambda + j);
            }
        }
    }
    return p.resized(lambda);
}

struct Field {
    const FieldSpec &spec;
    BitPoly mul(const BitPoly &a, const BitPoly &b, Backend backend = Backend::Karatsuba) const {
        return gf_mul(a, b, spec, backend).value;
    }
    BitPoly one() const {
        return BitPoly::from_u64(1, spec.lambda);
    }
    // a^(2^lambda − 2) = Π_{i=1}^{lambda−1} a^(2^i).
    BitPoly inverse(const BitPoly &a) const {
        BitPoly result = one();
        BitPoly power = a;
        for (size_t i = 1; i < spec.lambda; ++i) {
            power = mul(power, power);
            result = mul(result, power);
        }
        return result;
    }
};

void tally(Gf2Check &c, bool ok) {
    ++c.cases;
    if (!ok) {
        ++c.failures;
    }
}

}  // namespace

std::vector<Gf2Check> run_gf2_suite(uint64_t seed, size_t cases) {
    std::vector<Gf2Check> out;
    for (size_t lambda = 1; lambda <= 4; ++lambda) {
        Field f{find_irreducible(lambda)};
        const uint64_t size = uint64_t{1} << lambda;
        auto el = [&](uint64_t v) { return BitPoly::from_u64(v, lambda); };
        Gf2Check axioms{"axioms_exhaustive", lambda};
        Gf2Check inverses{"inverse_exhaustive", lambda};
        Gf2Check backends{"backend_equivalence_exhaustive", lambda};
        Gf2Check reduction{"reduce_long_division_exhaustive", lambda};
        for (uint64_t a = 0; a < size; ++a) {
            tally(axioms, f.mul(el(a), f.one()) == el(a));
            if (a != 0) {
                tally(inverses, f.mul(el(a), f.inverse(el(a))) == f.one());
            }
            for (uint64_t b = 0; b < size; ++b) {
                BitPoly ab = f.mul(el(a), el(b));
                tally(axioms, ab == f.mul(el(b), el(a)));
                tally(backends, ab == f.mul(el(a), el(b), Backend::Schoolbook) &&
                                    ab == gf_mul(el(a), el(b), f.spec, Backend::Karatsuba, ExecMode::Counting).value);
                for (uint64_t c = 0; c < size; ++c) {
                    tally(axioms, f.mul(ab, el(c)) == f.mul(el(a), f.mul(el(b), el(c))));
                    tally(axioms, f.mul(el(a), el(b ^ c)) == (ab ^ f.mul(el(a), el(c))));
                }
            }
        }
        for (uint64_t p = 0; p < (uint64_t{1} << (2 * lambda)); ++p) {
            BitPoly poly = BitPoly::from_u64(p, 2 * lambda);
            tally(reduction, reduce(poly, f.spec).value == long_division(poly, f.spec.modulus, lambda));
        }
        out.insert(out.end(), {axioms, inverses, backends, reduction});
    }

    RandomSource rng = RandomSource::seeded(seed);
    for (size_t lambda : {8, 127, 243, 729}) {
        Field f{find_irreducible(lambda)};
        Gf2Check axioms{"axioms", lambda};
        Gf2Check inverses{"inverse", lambda};
        Gf2Check backends{"backend_equivalence", lambda};
        Gf2Check reduction{"reduce_long_division", lambda};
        const size_t inverse_cases = std::min<size_t>(cases, 100);
        const size_t counting_cases = std::min<size_t>(cases, 20);
        for (size_t i = 0; i < cases; ++i) {
            BitPoly a = rng.bits(lambda), b = rng.bits(lambda), c = rng.bits(lambda);
            BitPoly ab = f.mul(a, b);
            tally(axioms, ab == f.mul(b, a) && f.mul(ab, c) == f.mul(a, f.mul(b, c)) &&
                              f.mul(a, b ^ c) == (ab ^ f.mul(a, c)) && f.mul(a, f.one()) == a);
            bool same = ab == f.mul(a, b, Backend::Schoolbook) &&
                        clmul(a, b, Backend::Schoolbook).value == clmul(a, b, Backend::Karatsuba).value;
            if (i < counting_cases) {
                same = same && ab == gf_mul(a, b, f.spec, Backend::Karatsuba, ExecMode::Counting).value &&
                       ab == gf_mul(a, b, f.spec, Backend::Schoolbook, ExecMode::Counting).value;
            }
            tally(backends, same);
            BitPoly wide = rng.bits(2 * lambda);
            tally(reduction, reduce(wide, f.spec).value == long_division(wide, f.spec.modulus, lambda));
            if (i < inverse_cases && !a.is_zero()) {
                tally(inverses, f.mul(a, f.inverse(a)) == f.one());
            }
        }
        out.insert(out.end(), {axioms, inverses, backends, reduction});
    }
    return out;
}

bool suite_passed(const std::vector<Gf2Check> &checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Gf2Check &c) { return c.pass(); });
}

nlohmann::json to_json(const std::vector<Gf2Check> &checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : checks) {
        arr.push_back({{"check", c.name},
                       {"lambda", c.lambda},
                       {"cases", c.cases},
                       {"failures", c.failures},
                       {"pass", c.pass()}});
    }
    return {{"suite", "gf2"}, {"pass", suite_passed(checks)}, {"checks", arr}};
}

std::string to_text(const std::vector<Gf2Check> &checks) {
    std::ostringstream os;
    for (const auto &c : checks) {
        os << (c.pass() ? "ok  " : "FAIL") << ' ' << c.name << " lambda=" << c.lambda << ' ' << c.cases - c.failures
           << '/' << c.cases << '\n';
    }
    os << (suite_passed(checks) ? "gf2 suite passed" : "gf2 suite FAILED") << '\n';
    return os.str();
}

}  // namespace entroseal::gf2
