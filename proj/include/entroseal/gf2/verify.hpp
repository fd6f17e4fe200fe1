#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace entroseal::gf2 {

struct Gf2Check {
    std::string name;
    size_t lambda = 0;
    size_t cases = 0;
    size_t failures = 0;
    bool pass() const {
        return failures == 0;
    }
};

/// Field axioms, inverses, backend equivalence and reduction against bit-by-bit long division.
/// Exhaustive for lambda <= 4; `cases` random instances for lambda in {8, 127, 243, 729}.
std::vector<Gf2Check> run_gf2_suite(uint64_t seed, size_t cases = 1000);
bool suite_passed(const std::vector<Gf2Check> &checks);

nlohmann::json to_json(const std::vector<Gf2Check> &checks);
std::string to_text(const std::vector<Gf2Check> &checks);

}  // namespace entroseal::gf2
