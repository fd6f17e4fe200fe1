#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace entroseal::statlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Finite distribution over nbits-bit strings with exact integer weights;
/// Pr[outcome] = weight / total. Outcomes are stored sorted.
class Distribution {
   public:
    /// Outcomes must be distinct and fit in nbits (<= 63); zero weights are dropped.
    /// Throws a precondition error on duplicates, overflow or an empty support.
    Distribution(size_t nbits, std::vector<std::pair<uint64_t, uint64_t>> entries);

    size_t nbits() const noexcept {
        return nbits_;
    }
    size_t size() const noexcept {
        return outcomes_.size();
    }
    const std::vector<uint64_t> &outcomes() const noexcept {
        return outcomes_;
    }
    const std::vector<uint64_t> &weights() const noexcept {
        return weights_;
    }
    uint64_t total() const noexcept {
        return total_;
    }
    Rational probability(uint64_t outcome) const;

   private:
    size_t nbits_;
    std::vector<uint64_t> outcomes_;
    std::vector<uint64_t> weights_;
    uint64_t total_ = 0;
};

struct NamedDistribution {
    std::string name;
    Distribution dist;
};

Distribution uniform(size_t n);
/// Uniform on the 2^t strings 0 .. 2^t − 1 (min-entropy exactly t).
Distribution flat(size_t n, size_t t);
/// Pr[i] = 2^−(i+1) for i < m − 1 and the remainder on m − 1, with m = min(2^n, 32).
Distribution geometric(size_t n);
Distribution point_mass(size_t n, uint64_t x);
/// The same weights on relabeled outcomes; `labels` must be distinct and fit in nbits.
Distribution relabeled(const Distribution &d, const std::vector<uint64_t> &labels);

/// uniform, flat-t0 .. flat-tn, geometric, point-mass.
std::vector<NamedDistribution> plaintext_families(size_t n);

Rational collision_probability(const Distribution &d);
double min_entropy(const Distribution &d);
double collision_entropy(const Distribution &d);

/// Half the L1 distance; both distributions must live on strings of the same length.
Rational statistical_distance(const Distribution &a, const Distribution &b);
/// Distance to the uniform distribution on all 2^nbits strings.
Rational distance_to_uniform(const Distribution &d);

double to_double(const Rational &r);

}  // namespace entroseal::statlab
