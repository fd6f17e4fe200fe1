#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entroseal/keyexpand/expansion.hpp"
#include "entroseal/statlab/distribution.hpp"
#include "json.hpp"

namespace entroseal::statlab {

inline constexpr uint64_t kDefaultBudget = uint64_t{1} << 30;

/// ENTROSEAL_BUDGET if set (a positive integer), else kDefaultBudget.
uint64_t default_budget();

/// Exact distribution of (U, V, X ⊕ pad(K, U, V)) with K, U, V uniform and X ~ plaintext,
/// encoded as u | v << lambda | payload << (lambda + tail_len). Classical mode only.
/// Throws a resource error when 2^(ell+lambda+tail_len) · |support| exceeds `budget`.
Distribution ciphertext_distribution(const keyexpand::ExpansionParams &p, const Distribution &plaintext,
                                     uint64_t budget = default_budget());

struct CollisionReport {
    std::string family;
    keyexpand::ExpansionParams params;
    /// The collision bound is proved for lambda = ell; other shapes are checked but flagged.
    bool in_proof_branch = false;
    double h2_plaintext = 0;
    Rational lhs;
    Rational bound;
    bool pass = false;
};

/// lhs = collision probability of the ciphertext, bound = 2^−2n (1 + 2^(n−ell) · CP(X)),
/// which equals 2^−2n (1 + 2^(n−ell−H2(X))). Compared exactly.
CollisionReport check_collision_bound(const keyexpand::ExpansionParams &p, const NamedDistribution &plaintext,
                                      uint64_t budget = default_budget());

struct IndistinguishabilityReport {
    std::string family;
    keyexpand::ExpansionParams params;
    size_t space_bits = 0;
    Rational collision;
    Rational delta;
    /// Smallest eps with collision <= (1 + 2 eps^2) / |S|.
    double eps_star = 0;
    bool pass = false;
};

/// delta = distance of the ciphertext from uniform on its 2^space_bits strings;
/// pass iff delta <= eps_star (exactly, with a 1e-12 floating fallback).
IndistinguishabilityReport check_indistinguishability(const keyexpand::ExpansionParams &p,
                                                      const NamedDistribution &plaintext,
                                                      uint64_t budget = default_budget());

struct SizingReport {
    size_t n = 0;
    size_t t = 0;
    double epsilon = 0;
    size_t ell = 0;
    std::string family;
    Rational delta;
    bool pass = false;  // delta <= 8 eps
};

/// Key length from the classical derivation for min-entropy t, then the exact distance
/// from uniform for a plaintext with min-entropy at least t.
SizingReport check_derived_sizing(size_t n, size_t t, double epsilon, const NamedDistribution &plaintext,
                                  uint64_t budget = default_budget());

struct ClassicalSuite {
    std::vector<CollisionReport> collision;
    std::vector<IndistinguishabilityReport> indistinguishability;
    std::vector<SizingReport> sizing;
    bool pass() const;
};

/// Grid n in [n_min, n_max], ell in 1..n, every plaintext family; sizing instances for
/// flat and uniform plaintexts where the derived key length is feasible.
ClassicalSuite run_classical_suite(size_t n_min = 3, size_t n_max = 6, uint64_t budget = default_budget());

nlohmann::json to_json(const CollisionReport &r);
nlohmann::json to_json(const IndistinguishabilityReport &r);
nlohmann::json to_json(const SizingReport &r);
nlohmann::json to_json(const ClassicalSuite &s);
/// One line per check, failures marked.
std::string to_text(const ClassicalSuite &s);

}  // namespace entroseal::statlab
