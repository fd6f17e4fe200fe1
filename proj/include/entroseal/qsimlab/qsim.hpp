#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/keyexpand/expansion.hpp"
#include "json.hpp"

namespace entroseal::qsimlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kIdentityTol = 1e-10;
inline constexpr size_t kMaxQubits = 5;
inline constexpr size_t kMaxEnvDim = 4;

/// Throws a precondition error unless m is Hermitian within kStructuralTol, has unit trace within
/// kStructuralTol and no eigenvalue below −kIdentityTol.
void validate_density(const Matrix &m, const std::string &what);

/// State on A ⊗ E with A = n qubits. Basis index = a · dim_e + e; qubit 1 is the most significant
/// bit of a (first tensor factor).
struct BipartiteState {
    size_t n = 0;
    size_t dim_e = 1;
    Matrix rho;

    size_t dim_a() const {
        return size_t{1} << n;
    }
    /// Throws a precondition error on shape or density violations.
    void validate() const;
};

Matrix partial_trace_e(const BipartiteState &s);  // rho^A
Matrix partial_trace_a(const BipartiteState &s);  // rho^E
Matrix kron(const Matrix &a, const Matrix &b);
/// tau^A ⊗ rho^E.
Matrix decoupled(const BipartiteState &s);

/// beta = s ‖ q (2n bits): s_i = bit i−1, q_i = bit n+i−1 for qubit i. Applies
/// U_beta = ⊗ X^{s_i} Z^{q_i} (Z first) on A: (U ⊗ 1) rho (U† ⊗ 1).
Matrix qotp_apply(const gf2::BitPoly &beta, const BipartiteState &s);
/// 2^−2n Σ_beta F_beta(rho). Requires n <= kMaxQubits and dim_e <= kMaxEnvDim.
Matrix full_qotp_average(const BipartiteState &s);
/// 2^−ell Σ_k F_{b(k,u,v)}(rho) with b from expand_affine; quantum-mode params with params.n == s.n.
Matrix r_uv(const gf2::BitPoly &u, const gf2::BitPoly &v, const keyexpand::ExpansionParams &params,
            const BipartiteState &s);

/// Σ |eigenvalue| of a Hermitian matrix; precondition error if not Hermitian within 1e-10 · max(1, ‖M‖max).
double trace_norm(const Matrix &m);
/// Sum of singular values; valid for any square matrix.
double singular_value_sum(const Matrix &m);

/// Tr[rho σ^−1/2 rho σ^−1/2] with σ = 1_A ⊗ σ_E, using the pseudo-inverse square root of σ_E on its
/// support. Domain error if σ_E does not dominate rho^E.
double collision_entropy_term(const BipartiteState &s, const Matrix &sigma_e);

enum class StateKind { Pure, Mixed, Product, MaxEntangled };
std::string_view to_string(StateKind kind);

/// Deterministic from seed. MaxEntangled needs dim_e == 2^n (a seeded unitary acts on E).
BipartiteState random_state(size_t n, size_t dim_e, StateKind kind, uint64_t seed);
/// Full-rank random density matrix (Ginibre).
Matrix random_density(size_t dim, uint64_t seed);

struct AverageOverVReport {
    size_t n = 0, dim_e = 0, ell = 0;
    uint64_t u = 0;
    double residual = 0;
    bool pass = false;
};

/// ‖E_v R_uv(rho) − tau^A ⊗ rho^E‖1 <= kIdentityTol for one u.
AverageOverVReport check_average_over_v(const gf2::BitPoly &u, const keyexpand::ExpansionParams &params, const BipartiteState &s);

struct OperatorIdentityReport {
    size_t n = 0, ell = 0, lambda = 0, dim = 0;
    double residual = 0;
    double scale = 0;
    bool pass = false;
};

/// f[beta] for all 2^2n strings beta (k in the low ell bits, g above). Checks
/// E_{kk'uv} f(b(k,u,v)) f(b(k',u,v)) = 2^−ell E_beta f(beta)^2 + (E_beta f(beta))^2 − 2^−ell E_k (E_g f(k‖g))^2
/// by direct enumeration of the left side. Residual = max entry difference; scale = max(1, max |f entry|^2).
OperatorIdentityReport check_operator_identity(const keyexpand::ExpansionParams &params, const std::vector<Matrix> &f);
/// f drawn from seed: complex d × d entries, each real and imaginary part standard normal.
std::vector<Matrix> random_operator_function(size_t n, size_t d, uint64_t seed);

struct SigmaCheck {
    std::string label;
    double bound = 0;
    bool pass = false;
};

struct TraceBoundReport {
    size_t n = 0, dim_e = 0, ell = 0, lambda = 0;
    std::string state_label;
    double lhs = 0;  // E_uv ‖R_uv(rho) − tau^A ⊗ rho^E‖1
    std::vector<SigmaCheck> sigma;
    /// Present for product inputs: sqrt(2^(n−ell−H2(A))).
    std::optional<double> product_bound;
    bool product_pass = true;
    bool pass = false;
};

/// Per-σ bound sqrt(2^(n−ell)) · sqrt(Tr σ_E) · sqrt(collision_entropy_term(rho, σ_E)) for every candidate;
/// relative tolerance 1e-9. Product inputs (rho = rho^A ⊗ rho^E within 1e-12) also get the closed bound.
TraceBoundReport check_trace_bound(const keyexpand::ExpansionParams &params, const BipartiteState &s,
                              const std::vector<std::pair<std::string, Matrix>> &sigma_list,
                              const std::string &state_label = "");

struct QotpReport {
    size_t n = 0, dim_e = 0;
    std::string state_label;
    double residual = 0;
    bool pass = false;
};

QotpReport check_full_randomization(const BipartiteState &s, const std::string &state_label = "");

struct QuantumSuite {
    std::vector<QotpReport> qotp;
    std::vector<AverageOverVReport> average_over_v;
    std::vector<OperatorIdentityReport> operator_identity;
    std::vector<TraceBoundReport> trace_bound;
    /// Whether the exact LHS never increased with ell for any tested state (recorded, not asserted).
    bool lhs_monotone_in_ell = true;
    bool pass() const;
};

/// n in {1,2,3}, dim_e in {1,2,4}, 20 states each.
std::vector<QotpReport> run_qotp_suite(uint64_t seed);
/// n in {1,2}, every ell <= 2n, every u, 10 states per (n, ell).
std::vector<AverageOverVReport> run_average_over_v_suite(uint64_t seed);
/// count random operator-valued f over n in {1,2}, cycling ell so both lambda branches occur.
std::vector<OperatorIdentityReport> run_operator_identity_suite(uint64_t seed, size_t count = 50);
/// n in {1,2}, ell in 1..2n, 10 states (first one maximally entangled), σ_E in {rho^E, tau_E, 20 random}.
std::vector<TraceBoundReport> run_trace_bound_suite(uint64_t seed, bool *lhs_monotone = nullptr);
QuantumSuite run_quantum_suite(uint64_t seed);

nlohmann::json to_json(const QuantumSuite &s);
std::string to_text(const QuantumSuite &s);

}  // namespace entroseal::qsimlab
