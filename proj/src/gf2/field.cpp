#include "entroseal/gf2/field.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <shared_mutex>

#include "entroseal/error.hpp"
#include "poly_words.hpp"

namespace entroseal::gf2 {

namespace {

FieldSpec build_spec(const BitPoly &modulus) {
    FieldSpec spec;
    spec.lambda = static_cast<size_t>(modulus.degree());
    spec.modulus = modulus.resized(spec.lambda + 1);
    spec.modulus_weight = spec.modulus.popcount();
    for (size_t e = spec.lambda; e-- > 0;) {
        if (spec.modulus.bit(e)) {
            spec.low_exponents.push_back(e);
        }
    }
    return spec;
}

// ---- exhaustive test (degree <= 32) ----

uint64_t mod_u64(uint64_t f, int df, uint64_t g, int dg) {
    for (int i = df; i >= dg; --i) {
        if ((f >> i) & 1) {
            f ^= g << (i - dg);
        }
    }
    return f;
}

bool irreducible_exhaustive(uint64_t f, int deg) {
    for (int d = 1; d <= deg / 2; ++d) {
        uint64_t lo = uint64_t{1} << d;
        uint64_t hi = uint64_t{1} << (d + 1);
        for (uint64_t g = lo; g < hi; ++g) {
            // x divides g but not f: g cannot divide f.
            if ((f & 1) && !(g & 1)) {
                continue;
            }
            if (mod_u64(f, deg, g, d) == 0) {
                return false;
            }
        }
    }
    return true;
}

// ---- Rabin's test with a distinct-degree prefilter ----

std::vector<size_t> prime_divisors(size_t n) {
    std::vector<size_t> out;
    for (size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

bool has_common_factor(const std::vector<uint64_t> &h, const BitPoly &f) {
    std::vector<uint64_t> fw(f.words().begin(), f.words().end());
    return detail::gcd_degree(std::move(fw), h) > 0;
}

constexpr size_t kDistinctDegreeLimit = 512;

// f of degree lambda > 1. Factors of degree < first_degree are assumed already excluded.
// x^(2^lambda) = x mod f and gcd(x^(2^(lambda/r)) - x, f) = 1 for every prime r | lambda
// is Rabin's criterion; the products of (x^(2^i) - x) for small i only reject early.
bool rabin_irreducible(const BitPoly &f, size_t first_degree) {
    const size_t lambda = static_cast<size_t>(f.degree());
    std::vector<size_t> low;
    for (size_t e = 0; e < lambda; ++e) {
        if (f.bit(e)) {
            low.push_back(e);
        }
    }
    if (!f.bit(0)) {
        return false;  // divisible by x
    }
    detail::SparseReducer reducer(lambda, low);
    const size_t words = words_for_bits(lambda);

    std::vector<uint8_t> checkpoint(lambda + 1, 0);
    for (size_t r : prime_divisors(lambda)) {
        checkpoint[lambda / r] = 1;
    }
    const size_t prefilter_end = std::min(lambda / 2, kDistinctDegreeLimit);

    std::vector<uint64_t> h(words, 0), wide(2 * words, 0), acc(words, 0), diff(words, 0);
    h[0] = 2;  // x
    acc[0] = 1;
    bool acc_dirty = false;
    for (size_t i = 1; i <= lambda; ++i) {
        detail::square_words(h.data(), words, wide.data());
        reducer.reduce(wide.data(), 2 * lambda - 1);
        std::copy_n(wide.begin(), words, h.begin());

        if (i >= first_degree && i <= prefilter_end) {
            diff = h;
            diff[0] ^= 2;
            detail::clmul_words(acc.data(), words, diff.data(), words, wide.data(), Backend::Karatsuba);
            reducer.reduce(wide.data(), 2 * lambda - 1);
            std::copy_n(wide.begin(), words, acc.begin());
            acc_dirty = true;
            bool power_of_two = (i & (i - 1)) == 0;
            if (acc_dirty && ((power_of_two && i >= 32) || i == prefilter_end)) {
                if (has_common_factor(acc, f)) {
                    return false;
                }
                acc_dirty = false;
            }
        }
        if (checkpoint[i]) {
            diff = h;
            diff[0] ^= 2;
            if (has_common_factor(diff, f)) {
                return false;
            }
        }
    }
    std::vector<uint64_t> x(words, 0);
    x[0] = 2;
    return h == x;
}

// ---- small-factor sieve for candidate searches ----

// Small degrees make Rabin tests cheap, so they sieve shallowly; large pentanomial
// searches spend most of their time in Rabin tests, so they sieve deeper.
constexpr int kShallowSieveDegree = 8;
constexpr size_t kSieveFrom = 512;
constexpr int kSieveDegree = 16;
constexpr int kDeepSieveDegree = 20;
constexpr size_t kDeepSieveFrom = 8192;

struct SmallPoly {
    uint32_t bits;
    int degree;
};

uint32_t mulmod_small(uint32_t a, uint32_t b, const SmallPoly &g) {
    uint64_t prod = 0;
    for (int i = 0; i < g.degree; ++i) {
        if ((b >> i) & 1) {
            prod ^= uint64_t{a} << i;
        }
    }
    return static_cast<uint32_t>(mod_u64(prod, 2 * g.degree - 2, g.bits, g.degree));
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) {
        int db = 63 - std::countl_zero(b);
        while (a != 0 && 63 - std::countl_zero(a) >= db) {
            a ^= b << (63 - std::countl_zero(a) - db);
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin's criterion on a single word; g has degree d >= 2 and g(0) = 1.
bool small_irreducible(const SmallPoly &g, std::vector<uint32_t> &frobenius) {
    frobenius.assign(static_cast<size_t>(g.degree) + 1, 2);
    for (int i = 1; i <= g.degree; ++i) {
        frobenius[i] = mulmod_small(frobenius[i - 1], frobenius[i - 1], g);
    }
    if (frobenius[g.degree] != 2) {
        return false;
    }
    for (size_t r : prime_divisors(static_cast<size_t>(g.degree))) {
        if (gcd_u64(g.bits, frobenius[g.degree / r] ^ 2u) != 1) {
            return false;
        }
    }
    return true;
}

std::vector<SmallPoly> generate_small_irreducibles(int max_degree) {
    std::vector<SmallPoly> out;
    std::vector<uint32_t> scratch;
    for (int d = 2; d <= max_degree; ++d) {
        for (uint32_t g = (uint32_t{1} << d) | 1; g < (uint32_t{1} << (d + 1)); g += 2) {
            if (small_irreducible({g, d}, scratch)) {
                out.push_back({g, d});
            }
        }
    }
    return out;
}

// Irreducibles of degree 2..max_degree, in increasing degree.
std::span<const SmallPoly> small_irreducibles(int max_degree) {
    static const std::vector<SmallPoly> shallow = generate_small_irreducibles(kSieveDegree);
    const std::vector<SmallPoly> *list = &shallow;
    if (max_degree > kSieveDegree) {
        static const std::vector<SmallPoly> deep = generate_small_irreducibles(kDeepSieveDegree);
        list = &deep;
    }
    auto end = std::partition_point(list->begin(), list->end(),
                                    [max_degree](const SmallPoly &g) { return g.degree <= max_degree; });
    return {list->data(), static_cast<size_t>(end - list->begin())};
}

int sieve_degree_for(size_t lambda, bool pentanomial) {
    if (lambda < kSieveFrom) {
        return kShallowSieveDegree;
    }
    return pentanomial && lambda >= kDeepSieveFrom ? kDeepSieveDegree : kSieveDegree;
}

uint32_t x_pow_mod_small(size_t e, const SmallPoly &g) {
    uint32_t result = 1;
    uint32_t base = 2;
    while (e > 0) {
        if (e & 1) {
            result = mulmod_small(result, base, g);
        }
        base = mulmod_small(base, base, g);
        e >>= 1;
    }
    return result;
}

uint32_t next_power(uint32_t r, const SmallPoly &g) {
    r <<= 1;
    if ((r >> g.degree) & 1) {
        r ^= g.bits;
    }
    return r;
}

std::optional<FieldSpec> search_trinomial(size_t lambda) {
    auto make = [lambda](size_t k) { return BitPoly::from_exponents({lambda, k, 0}, lambda + 1); };
    if (lambda <= 32) {
        for (size_t k = 1; k < lambda; ++k) {
            if (irreducible_exhaustive(make(k).to_u64(), static_cast<int>(lambda))) {
                return build_spec(make(k));
            }
        }
        return std::nullopt;
    }
    std::vector<uint8_t> alive(lambda, 1);
    for (size_t k = 1; k < lambda; ++k) {
        alive[k] = !detail::trinomial_factor_count_even(lambda, k);
    }
    if (std::count(alive.begin() + 1, alive.end(), 1) == 0) {
        return std::nullopt;
    }
    const int sieve_degree = sieve_degree_for(lambda, false);
    for (const SmallPoly &g : small_irreducibles(sieve_degree)) {
        uint32_t target = x_pow_mod_small(lambda, g) ^ 1;
        uint32_t r = 1;
        for (size_t k = 1; k < lambda; ++k) {
            r = next_power(r, g);
            if (r == target) {
                alive[k] = 0;
            }
        }
    }
    for (size_t k = 1; k < lambda; ++k) {
        if (alive[k] && rabin_irreducible(make(k), sieve_degree + 1)) {
            return build_spec(make(k));
        }
    }
    return std::nullopt;
}

std::optional<FieldSpec> search_pentanomial(size_t lambda) {
    if (lambda < 4) {
        return std::nullopt;
    }
    auto make = [lambda](size_t a, size_t b, size_t c) {
        return BitPoly::from_exponents({lambda, a, b, c, 0}, lambda + 1);
    };
    if (lambda <= 32) {
        for (size_t a = 3; a < lambda; ++a) {
            for (size_t b = 2; b < a; ++b) {
                for (size_t c = 1; c < b; ++c) {
                    if (irreducible_exhaustive(make(a, b, c).to_u64(), static_cast<int>(lambda))) {
                        return build_spec(make(a, b, c));
                    }
                }
            }
        }
        return std::nullopt;
    }
    const int sieve_degree = sieve_degree_for(lambda, true);
    // Batches of leading exponent a in [a_lo, a_hi), growing geometrically.
    size_t a_lo = 3;
    size_t a_hi = std::min<size_t>(lambda, 64);
    while (a_lo < lambda) {
        struct Triple {
            size_t a, b, c;
        };
        std::vector<Triple> triples;
        for (size_t a = a_lo; a < a_hi; ++a) {
            for (size_t b = 2; b < a; ++b) {
                for (size_t c = 1; c < b; ++c) {
                    triples.push_back({a, b, c});
                }
            }
        }
        // alive[a][b][c] via flat index; dead candidates have a small factor.
        std::vector<uint8_t> alive(triples.size(), 1);
        auto index_of = [&](size_t a, size_t b, size_t c) {
            // Position of (a, b, c) inside the batch: sum over earlier a of C(a-1, 2) plus offsets.
            size_t base = 0;
            base = (a - 1) * (a - 2) * (a - 3) / 6 - (a_lo - 1) * (a_lo - 2) * (a_lo - 3) / 6;
            return base + (b - 1) * (b - 2) / 2 + (c - 1);
        };
        // Chained hash of x^a mod g over the batch, keyed by the residue.
        const size_t table_bits = std::bit_width(2 * (a_hi - a_lo));
        const size_t table_mask = (size_t{1} << table_bits) - 1;
        auto slot = [&](uint32_t r) { return (r * 0x9E3779B1u) >> (32 - table_bits) & table_mask; };
        std::vector<uint32_t> residue(a_hi);
        std::vector<int32_t> head(table_mask + 1);
        std::vector<int32_t> next(a_hi, -1);
        for (const SmallPoly &g : small_irreducibles(sieve_degree)) {
            uint32_t target = x_pow_mod_small(lambda, g) ^ 1;
            residue[0] = 1;
            for (size_t e = 1; e < a_hi; ++e) {
                residue[e] = next_power(residue[e - 1], g);
            }
            std::fill(head.begin(), head.end(), -1);
            for (size_t a = a_lo; a < a_hi; ++a) {
                size_t h = slot(residue[a]);
                next[a] = head[h];
                head[h] = static_cast<int32_t>(a);
            }
            for (size_t b = 2; b + 1 < a_hi; ++b) {
                for (size_t c = 1; c < b; ++c) {
                    uint32_t want = target ^ residue[b] ^ residue[c];
                    for (int32_t a = head[slot(want)]; a >= 0; a = next[a]) {
                        if (static_cast<size_t>(a) > b && residue[a] == want) {
                            alive[index_of(static_cast<size_t>(a), b, c)] = 0;
                        }
                    }
                }
            }
        }
        for (size_t i = 0; i < triples.size(); ++i) {
            const Triple &t = triples[i];
            if (alive[i] && rabin_irreducible(make(t.a, t.b, t.c), sieve_degree + 1)) {
                return build_spec(make(t.a, t.b, t.c));
            }
        }
        a_lo = a_hi;
        a_hi = std::min(lambda, 2 * a_hi);
    }
    return std::nullopt;
}

FieldSpec search_any_weight(size_t lambda) {
    BitPoly f = BitPoly::from_exponents({lambda, 0}, lambda + 1);
    while (true) {
        if (is_irreducible(f)) {
            return build_spec(f);
        }
        // Increment the low part (odd values only) as an integer.
        size_t i = 1;
        while (i < lambda && f.bit(i)) {
            f.set_bit(i, false);
            ++i;
        }
        require(i < lambda, ErrorKind::Configuration, "no irreducible polynomial found");
        f.set_bit(i, true);
    }
}

bool is_twice_power_of_three(size_t lambda) {
    if (lambda < 2 || lambda % 2 != 0) {
        return false;
    }
    size_t m = lambda / 2;
    while (m % 3 == 0) {
        m /= 3;
    }
    return m == 1;
}

FieldSpec search_modulus(size_t lambda) {
    if (lambda == 1) {
        return build_spec(BitPoly::from_exponents({1, 0}, 2));
    }
    if (is_twice_power_of_three(lambda)) {
        BitPoly f = BitPoly::from_exponents({lambda, lambda / 2, 0}, lambda + 1);
        if (is_irreducible(f)) {
            return build_spec(f);
        }
    }
    if (auto spec = search_trinomial(lambda)) {
        return *spec;
    }
    if (auto spec = search_pentanomial(lambda)) {
        return *spec;
    }
    return search_any_weight(lambda);
}

}  // namespace

namespace detail {

bool trinomial_factor_count_even(size_t n, size_t k) {
    require(k > 0 && k < n, ErrorKind::Precondition, "trinomial middle exponent out of range");
    if (n % 2 == 0 && k % 2 == 0) {
        return true;  // a square
    }
    if (n % 2 == 1 && k % 2 == 1) {
        k = n - k;  // the reciprocal has the same factor count
    }
    if (n % 2 == 0) {
        if (n == 2 * k) {
            return false;
        }
        size_t r = (n / 2 * k) % 4;
        return r == 0 || r == 1;
    }
    size_t r = n % 8;
    bool pm3 = r == 3 || r == 5;
    bool pm1 = r == 1 || r == 7;
    return (2 * n) % k == 0 ? pm1 : pm3;
}

}  // namespace detail

bool is_irreducible(const BitPoly &f) {
    int64_t deg = f.degree();
    if (deg <= 0) {
        return false;
    }
    if (deg == 1) {
        return true;
    }
    if (deg <= 32) {
        return irreducible_exhaustive(f.to_u64(), static_cast<int>(deg));
    }
    return rabin_irreducible(f.resized(static_cast<size_t>(deg) + 1), 1);
}

FieldSpec make_field(const BitPoly &modulus) {
    require(modulus.degree() >= 1, ErrorKind::Precondition, "modulus must have degree >= 1");
    require(is_irreducible(modulus), ErrorKind::Precondition, "modulus is not irreducible");
    return build_spec(modulus);
}

const FieldSpec &find_irreducible(size_t lambda) {
    require(lambda >= 1, ErrorKind::Precondition, "field degree must be positive");
    static std::shared_mutex mutex;
    static std::map<size_t, FieldSpec> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(lambda); it != cache.end()) {
            return it->second;
        }
    }
    FieldSpec spec = search_modulus(lambda);
    std::unique_lock lock(mutex);
    return cache.emplace(lambda, std::move(spec)).first->second;
}

OpCount reduce_cost(size_t nbits, const FieldSpec &spec) {
    if (nbits <= spec.lambda) {
        return {};
    }
    return {0, static_cast<uint64_t>(nbits - spec.lambda) * (spec.modulus_weight - 1)};
}

Product reduce(const BitPoly &p, const FieldSpec &spec, ExecMode mode) {
    const size_t lambda = spec.lambda;
    require(p.nbits() <= 2 * lambda, ErrorKind::Precondition, "operand longer than 2·lambda bits");
    Product result{BitPoly(lambda), reduce_cost(p.nbits(), spec)};
    if (mode == ExecMode::Counting) {
        std::vector<uint8_t> c(std::max(p.nbits(), lambda), 0);
        for (size_t i = 0; i < p.nbits(); ++i) {
            c[i] = p.bit(i);
        }
        OpCount counted;
        for (size_t d = p.nbits(); d-- > lambda;) {
            for (size_t e : spec.low_exponents) {
                c[d - lambda + e] ^= c[d];
                ++counted.xors;
            }
            c[d] = 0;
        }
        for (size_t i = 0; i < lambda; ++i) {
            result.value.set_bit(i, c[i]);
        }
        result.cost = counted;
        return result;
    }
    std::vector<uint64_t> work(std::max(words_for_bits(p.nbits()), words_for_bits(lambda)), 0);
    std::copy(p.words().begin(), p.words().end(), work.begin());
    detail::SparseReducer(lambda, spec.low_exponents).reduce(work.data(), p.nbits());
    auto dst = result.value.mutable_words();
    std::copy_n(work.begin(), dst.size(), dst.begin());
    result.value.mask_tail();
    return result;
}

OpCount gf_mul_cost(const FieldSpec &spec, Backend backend) {
    return clmul_cost(spec.lambda, spec.lambda, backend) + reduce_cost(2 * spec.lambda, spec);
}

Product gf_mul(const BitPoly &a, const BitPoly &b, const FieldSpec &spec, Backend backend, ExecMode mode) {
    const auto lambda = static_cast<int64_t>(spec.lambda);
    require(a.degree() < lambda && b.degree() < lambda, ErrorKind::Precondition,
            "field operand degree must be below lambda");
    Product prod = clmul(a.resized(spec.lambda), b.resized(spec.lambda), backend, mode);
    Product rem = reduce(prod.value, spec, mode);
    rem.cost += prod.cost;
    return rem;
}

BitPoly gf_add(const BitPoly &a, const BitPoly &b, const FieldSpec &spec) {
    require(a.nbits() == spec.lambda && b.nbits() == spec.lambda, ErrorKind::Precondition,
            "field operands must be lambda bits");
    return a ^ b;
}

BitPoly lsb_truncate(const BitPoly &p, size_t m) {
    require(m <= p.nbits(), ErrorKind::Precondition, "truncation length exceeds operand length");
    return p.resized(m);
}

}  // namespace entroseal::gf2
