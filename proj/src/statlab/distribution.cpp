#include "entroseal/statlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entroseal/error.hpp"

namespace entroseal::statlab {

namespace {

constexpr size_t kMaxBits = 63;

uint64_t space_size(size_t nbits) {
    return uint64_t{1} << nbits;
}

}  // namespace

Distribution::Distribution(size_t nbits, std::vector<std::pair<uint64_t, uint64_t>> entries) : nbits_(nbits) {
    require(nbits >= 1 && nbits <= kMaxBits, ErrorKind::Precondition, "distribution length must be in [1, 63] bits");
    std::sort(entries.begin(), entries.end());
    for (size_t i = 0; i < entries.size(); ++i) {
        auto [outcome, weight] = entries[i];
        require(outcome < space_size(nbits), ErrorKind::Precondition, "outcome does not fit the declared length");
        require(i == 0 || entries[i - 1].first != outcome, ErrorKind::Precondition, "duplicate outcome in support");
        if (weight == 0) {
            continue;
        }
        require(total_ <= std::numeric_limits<uint64_t>::max() - weight, ErrorKind::Precondition,
                "total weight overflows 64 bits");
        total_ += weight;
        outcomes_.push_back(outcome);
        weights_.push_back(weight);
    }
    require(!outcomes_.empty(), ErrorKind::Precondition, "distribution has empty support");
}

Rational Distribution::probability(uint64_t outcome) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), outcome);
    if (it == outcomes_.end() || *it != outcome) {
        return Rational(0);
    }
    return Rational(BigInt(weights_[it - outcomes_.begin()]), BigInt(total_));
}

Distribution uniform(size_t n) {
    require(n >= 1 && n <= 30, ErrorKind::Precondition, "uniform family supports 1 <= n <= 30");
    std::vector<std::pair<uint64_t, uint64_t>> entries;
    for (uint64_t x = 0; x < space_size(n); ++x) {
        entries.emplace_back(x, 1);
    }
    return Distribution(n, std::move(entries));
}

Distribution flat(size_t n, size_t t) {
    require(t <= n && t <= 30, ErrorKind::Precondition, "flat family needs t <= n and t <= 30");
    std::vector<std::pair<uint64_t, uint64_t>> entries;
    for (uint64_t x = 0; x < space_size(t); ++x) {
        entries.emplace_back(x, 1);
    }
    return Distribution(n, std::move(entries));
}

Distribution geometric(size_t n) {
    uint64_t m = n >= 5 ? 32 : space_size(n);
    require(m >= 2, ErrorKind::Precondition, "geometric family needs n >= 1");
    std::vector<std::pair<uint64_t, uint64_t>> entries;
    for (uint64_t i = 0; i + 1 < m; ++i) {
        entries.emplace_back(i, uint64_t{1} << (m - 2 - i));
    }
    entries.emplace_back(m - 1, 1);
    return Distribution(n, std::move(entries));
}

Distribution point_mass(size_t n, uint64_t x) {
    return Distribution(n, {{x, 1}});
}

Distribution relabeled(const Distribution &d, const std::vector<uint64_t> &labels) {
    require(labels.size() == d.size(), ErrorKind::Precondition, "one label per support element");
    std::vector<std::pair<uint64_t, uint64_t>> entries;
    for (size_t i = 0; i < d.size(); ++i) {
        entries.emplace_back(labels[i], d.weights()[i]);
    }
    return Distribution(d.nbits(), std::move(entries));
}

std::vector<NamedDistribution> plaintext_families(size_t n) {
    std::vector<NamedDistribution> out;
    out.push_back({"uniform", uniform(n)});
    for (size_t t = 0; t <= n; ++t) {
        out.push_back({"flat-t" + std::to_string(t), flat(n, t)});
    }
    out.push_back({"geometric", geometric(n)});
    out.push_back({"point-mass", point_mass(n, 0)});
    return out;
}

Rational collision_probability(const Distribution &d) {
    BigInt sum = 0;
    for (uint64_t w : d.weights()) {
        sum += BigInt(w) * w;
    }
    BigInt total = d.total();
    return Rational(sum, total * total);
}

double min_entropy(const Distribution &d) {
    uint64_t top = *std::max_element(d.weights().begin(), d.weights().end());
    return std::log2(static_cast<double>(d.total())) - std::log2(static_cast<double>(top));
}

double collision_entropy(const Distribution &d) {
    Rational cp = collision_probability(d);
    return std::log2(denominator(cp).convert_to<double>()) - std::log2(numerator(cp).convert_to<double>());
}

Rational statistical_distance(const Distribution &a, const Distribution &b) {
    require(a.nbits() == b.nbits(), ErrorKind::Precondition, "distributions live on different string lengths");
    BigInt ta = a.total(), tb = b.total();
    BigInt sum = 0;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        BigInt wa = 0, wb = 0;
        if (j == b.size() || (i < a.size() && a.outcomes()[i] < b.outcomes()[j])) {
            wa = a.weights()[i++];
        } else if (i == a.size() || b.outcomes()[j] < a.outcomes()[i]) {
            wb = b.weights()[j++];
        } else {
            wa = a.weights()[i++];
            wb = b.weights()[j++];
        }
        BigInt diff = wa * tb - wb * ta;
        sum += diff < 0 ? BigInt(-diff) : diff;
    }
    return Rational(sum, 2 * ta * tb);
}

Rational distance_to_uniform(const Distribution &d) {
    BigInt space = BigInt(1) << d.nbits();
    BigInt total = d.total();
    BigInt sum = 0;
    for (uint64_t w : d.weights()) {
        BigInt diff = BigInt(w) * space - total;
        sum += diff < 0 ? BigInt(-diff) : diff;
    }
    sum += (space - d.size()) * total;
    return Rational(sum, 2 * total * space);
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

}  // namespace entroseal::statlab
