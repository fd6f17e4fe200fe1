#include "entroseal/qsimlab/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "entroseal/error.hpp"

namespace entroseal::qsimlab {

namespace {

using keyexpand::ExpansionParams;

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
};

// Qubit i (1-based) is index bit n − i; s_i = beta bit i − 1, q_i = beta bit n + i − 1.
PauliMasks pauli_masks(uint64_t beta, size_t n) {
    PauliMasks m;
    for (size_t i = 1; i <= n; ++i) {
        uint64_t index_bit = uint64_t{1} << (n - i);
        if ((beta >> (i - 1)) & 1) {
            m.x |= index_bit;
        }
        if ((beta >> (n + i - 1)) & 1) {
            m.z |= index_bit;
        }
    }
    return m;
}

// acc += weight · (U ⊗ 1) rho (U† ⊗ 1) for U = X^s Z^q: U|a> = (−1)^{q·a} |a ⊕ s>.
void add_pauli_conjugate(const PauliMasks &m, const Matrix &rho, size_t n, size_t dim_e, double weight,
                         Matrix &acc) {
    const uint64_t dim_a = uint64_t{1} << n;
    for (uint64_t a = 0; a < dim_a; ++a) {
        const int sign_a = std::popcount(m.z & a) & 1;
        const Eigen::Index row = static_cast<Eigen::Index>((a ^ m.x) * dim_e);
        for (uint64_t b = 0; b < dim_a; ++b) {
            const double w = ((sign_a + std::popcount(m.z & b)) & 1) ? -weight : weight;
            const Eigen::Index col = static_cast<Eigen::Index>((b ^ m.x) * dim_e);
            acc.block(row, col, dim_e, dim_e) +=
                w * rho.block(static_cast<Eigen::Index>(a * dim_e), static_cast<Eigen::Index>(b * dim_e), dim_e, dim_e);
        }
    }
}

void require_shape(const BipartiteState &s) {
    require(s.n >= 1 && s.n <= kMaxQubits, ErrorKind::Precondition,
            "qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    require(s.dim_e >= 1, ErrorKind::Precondition, "environment dimension must be positive");
    const Eigen::Index dim = static_cast<Eigen::Index>(s.dim_a() * s.dim_e);
    require(s.rho.rows() == dim && s.rho.cols() == dim, ErrorKind::Precondition,
            "state matrix does not match 2^n · dim_e");
}

void require_params(const ExpansionParams &p, const BipartiteState &s) {
    require(p.mode == keyexpand::Mode::Quantum, ErrorKind::Precondition, "quantum-mode parameters required");
    require(p.n == s.n, ErrorKind::Precondition, "parameters and state disagree on the qubit count");
}

double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix ginibre(size_t rows, size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

Matrix random_unitary(size_t dim, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
    return qr.householderQ();
}

Matrix mixed_density(size_t dim, std::mt19937_64 &rng) {
    Matrix g = ginibre(dim, dim, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

}  // namespace

void validate_density(const Matrix &m, const std::string &what) {
    require(m.rows() == m.cols() && m.rows() > 0, ErrorKind::Precondition, what + " must be a nonempty square matrix");
    require(max_abs(m - m.adjoint()) <= kStructuralTol, ErrorKind::Precondition, what + " is not Hermitian");
    require(std::abs(m.trace() - Complex(1.0)) <= kStructuralTol, ErrorKind::Precondition,
            what + " does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    require(eig.eigenvalues().minCoeff() >= -kIdentityTol, ErrorKind::Precondition,
            what + " has a negative eigenvalue");
}

void BipartiteState::validate() const {
    require_shape(*this);
    validate_density(rho, "state");
}

Matrix partial_trace_e(const BipartiteState &s) {
    require_shape(s);
    const Eigen::Index da = static_cast<Eigen::Index>(s.dim_a()), de = static_cast<Eigen::Index>(s.dim_e);
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index a = 0; a < da; ++a) {
        for (Eigen::Index b = 0; b < da; ++b) {
            out(a, b) = s.rho.block(a * de, b * de, de, de).trace();
        }
    }
    return out;
}

Matrix partial_trace_a(const BipartiteState &s) {
    require_shape(s);
    const Eigen::Index da = static_cast<Eigen::Index>(s.dim_a()), de = static_cast<Eigen::Index>(s.dim_e);
    Matrix out = Matrix::Zero(de, de);
    for (Eigen::Index a = 0; a < da; ++a) {
        out += s.rho.block(a * de, a * de, de, de);
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix decoupled(const BipartiteState &s) {
    const Eigen::Index da = static_cast<Eigen::Index>(s.dim_a());
    return kron(Matrix::Identity(da, da) / static_cast<double>(da), partial_trace_a(s));
}

Matrix qotp_apply(const gf2::BitPoly &beta, const BipartiteState &s) {
    require_shape(s);
    require(beta.nbits() == 2 * s.n, ErrorKind::Precondition, "Pauli key must have exactly 2n bits");
    Matrix out = Matrix::Zero(s.rho.rows(), s.rho.cols());
    add_pauli_conjugate(pauli_masks(beta.to_u64(), s.n), s.rho, s.n, s.dim_e, 1.0, out);
    return out;
}

Matrix full_qotp_average(const BipartiteState &s) {
    require_shape(s);
    require(s.dim_e <= kMaxEnvDim, ErrorKind::Resource,
            "full averaging supports dim_e <= " + std::to_string(kMaxEnvDim));
    const uint64_t keys = uint64_t{1} << (2 * s.n);
    Matrix out = Matrix::Zero(s.rho.rows(), s.rho.cols());
    for (uint64_t beta = 0; beta < keys; ++beta) {
        add_pauli_conjugate(pauli_masks(beta, s.n), s.rho, s.n, s.dim_e, 1.0 / static_cast<double>(keys), out);
    }
    return out;
}

Matrix r_uv(const gf2::BitPoly &u, const gf2::BitPoly &v, const ExpansionParams &params, const BipartiteState &s) {
    require_shape(s);
    require_params(params, s);
    const gf2::FieldSpec &field = gf2::find_irreducible(params.lambda);
    const uint64_t keys = uint64_t{1} << params.ell;
    Matrix out = Matrix::Zero(s.rho.rows(), s.rho.cols());
    for (uint64_t k = 0; k < keys; ++k) {
        gf2::BitPoly beta = keyexpand::expand_affine(gf2::BitPoly::from_u64(k, params.ell), u, v, params, field,
                                                     gf2::Backend::Karatsuba);
        add_pauli_conjugate(pauli_masks(beta.to_u64(), s.n), s.rho, s.n, s.dim_e, 1.0 / static_cast<double>(keys),
                            out);
    }
    return out;
}

double trace_norm(const Matrix &m) {
    require(m.rows() == m.cols(), ErrorKind::Precondition, "trace norm needs a square matrix");
    require(max_abs(m - m.adjoint()) <= kIdentityTol * std::max(1.0, max_abs(m)), ErrorKind::Precondition,
            "trace norm expects a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().sum();
}

double singular_value_sum(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double collision_entropy_term(const BipartiteState &s, const Matrix &sigma_e) {
    require_shape(s);
    const Eigen::Index de = static_cast<Eigen::Index>(s.dim_e);
    require(sigma_e.rows() == de && sigma_e.cols() == de, ErrorKind::Precondition,
            "sigma_E must act on the environment");
    require(max_abs(sigma_e - sigma_e.adjoint()) <= kStructuralTol * std::max(1.0, max_abs(sigma_e)),
            ErrorKind::Precondition, "sigma_E is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma_e);
    const auto &vals = eig.eigenvalues();
    const Matrix &vecs = eig.eigenvectors();
    require(vals.minCoeff() >= -kIdentityTol, ErrorKind::Precondition, "sigma_E is not positive semidefinite");
    const double cutoff = kStructuralTol * std::max(1.0, vals.maxCoeff());
    Matrix inv_sqrt = Matrix::Zero(de, de);
    Matrix kernel = Matrix::Zero(de, de);
    for (Eigen::Index i = 0; i < de; ++i) {
        const Matrix outer = vecs.col(i) * vecs.col(i).adjoint();
        if (vals(i) > cutoff) {
            inv_sqrt += outer / std::sqrt(vals(i));
        } else {
            kernel += outer;
        }
    }
    const Matrix rho_e = partial_trace_a(s);
    require((kernel * rho_e).trace().real() <= kIdentityTol, ErrorKind::Domain,
            "sigma_E does not dominate the environment marginal");
    const Eigen::Index da = static_cast<Eigen::Index>(s.dim_a());
    const Matrix sigma_inv_sqrt = kron(Matrix::Identity(da, da), inv_sqrt);
    const Matrix half = s.rho * sigma_inv_sqrt;
    return (half * half).trace().real();
}

std::string_view to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Pure:
            return "pure";
        case StateKind::Mixed:
            return "mixed";
        case StateKind::Product:
            return "product";
        case StateKind::MaxEntangled:
            return "max_entangled";
    }
    return "unknown";
}

BipartiteState random_state(size_t n, size_t dim_e, StateKind kind, uint64_t seed) {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::Precondition, "qubit count out of range");
    require(dim_e >= 1, ErrorKind::Precondition, "environment dimension must be positive");
    std::mt19937_64 rng(seed);
    BipartiteState s;
    s.n = n;
    s.dim_e = dim_e;
    const size_t dim_a = size_t{1} << n;
    const size_t dim = dim_a * dim_e;
    switch (kind) {
        case StateKind::Pure: {
            Matrix psi = ginibre(dim, 1, rng);
            psi /= psi.norm();
            s.rho = psi * psi.adjoint();
            break;
        }
        case StateKind::Mixed:
            s.rho = mixed_density(dim, rng);
            break;
        case StateKind::Product: {
            Matrix rho_a = mixed_density(dim_a, rng);
            s.rho = kron(rho_a, mixed_density(dim_e, rng));
            break;
        }
        case StateKind::MaxEntangled: {
            require(dim_e == dim_a, ErrorKind::Precondition, "a maximally entangled state needs dim_e = 2^n");
            Matrix w = random_unitary(dim_e, rng);
            Matrix psi = Matrix::Zero(static_cast<Eigen::Index>(dim), 1);
            for (size_t a = 0; a < dim_a; ++a) {
                psi.block(static_cast<Eigen::Index>(a * dim_e), 0, static_cast<Eigen::Index>(dim_e), 1) =
                    w.col(static_cast<Eigen::Index>(a));
            }
            psi /= std::sqrt(static_cast<double>(dim_a));
            s.rho = psi * psi.adjoint();
            break;
        }
    }
    // Restore exact Hermiticity lost to rounding.
    s.rho = (s.rho + s.rho.adjoint()) / 2.0;
    s.rho /= s.rho.trace().real();
    return s;
}

Matrix random_density(size_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix rho = mixed_density(dim, rng);
    return (rho + rho.adjoint()) / 2.0;
}

AverageOverVReport check_average_over_v(const gf2::BitPoly &u, const ExpansionParams &params, const BipartiteState &s) {
    require_params(params, s);
    require(u.nbits() == params.lambda, ErrorKind::Precondition, "u must have lambda bits");
    AverageOverVReport r;
    r.n = s.n;
    r.dim_e = s.dim_e;
    r.ell = params.ell;
    r.u = u.to_u64();
    const uint64_t vs = uint64_t{1} << params.tail_len;
    Matrix avg = Matrix::Zero(s.rho.rows(), s.rho.cols());
    for (uint64_t v = 0; v < vs; ++v) {
        avg += r_uv(u, gf2::BitPoly::from_u64(v, params.tail_len), params, s) / static_cast<double>(vs);
    }
    r.residual = trace_norm(avg - decoupled(s));
    r.pass = r.residual <= kIdentityTol;
    return r;
}

OperatorIdentityReport check_operator_identity(const ExpansionParams &params, const std::vector<Matrix> &f) {
    require(params.mode == keyexpand::Mode::Quantum, ErrorKind::Precondition, "quantum-mode parameters required");
    require(params.n <= 3, ErrorKind::Resource, "operator identity enumeration supports n <= 3");
    const uint64_t betas = uint64_t{1} << (2 * params.n);
    require(f.size() == betas, ErrorKind::Precondition, "f needs one matrix per 2n-bit string");
    const Eigen::Index d = f[0].rows();
    for (const Matrix &m : f) {
        require(m.rows() == d && m.cols() == d, ErrorKind::Precondition, "f values must share a square shape");
    }
    const gf2::FieldSpec &field = gf2::find_irreducible(params.lambda);
    const uint64_t keys = uint64_t{1} << params.ell;
    const uint64_t us = uint64_t{1} << params.lambda;
    const uint64_t vs = uint64_t{1} << params.tail_len;
    const uint64_t gs = vs;

    // Left side: all (k, k', u, v).
    Matrix lhs = Matrix::Zero(d, d);
    std::vector<uint64_t> b(keys);
    for (uint64_t u = 0; u < us; ++u) {
        gf2::BitPoly ub = gf2::BitPoly::from_u64(u, params.lambda);
        for (uint64_t v = 0; v < vs; ++v) {
            gf2::BitPoly vb = gf2::BitPoly::from_u64(v, params.tail_len);
            for (uint64_t k = 0; k < keys; ++k) {
                b[k] = keyexpand::expand_affine(gf2::BitPoly::from_u64(k, params.ell), ub, vb, params, field,
                                                gf2::Backend::Karatsuba)
                           .to_u64();
            }
            for (uint64_t k = 0; k < keys; ++k) {
                for (uint64_t k2 = 0; k2 < keys; ++k2) {
                    lhs += f[b[k]] * f[b[k2]];
                }
            }
        }
    }
    lhs /= static_cast<double>(keys * keys * us * vs);

    Matrix mean_sq = Matrix::Zero(d, d), mean = Matrix::Zero(d, d);
    for (uint64_t beta = 0; beta < betas; ++beta) {
        mean_sq += f[beta] * f[beta];
        mean += f[beta];
    }
    mean_sq /= static_cast<double>(betas);
    mean /= static_cast<double>(betas);
    Matrix same_key = Matrix::Zero(d, d);
    for (uint64_t k = 0; k < keys; ++k) {
        Matrix row = Matrix::Zero(d, d);
        for (uint64_t g = 0; g < gs; ++g) {
            row += f[k | (g << params.ell)];
        }
        row /= static_cast<double>(gs);
        same_key += row * row;
    }
    same_key /= static_cast<double>(keys);
    const double inv_keys = 1.0 / static_cast<double>(keys);
    Matrix rhs = inv_keys * mean_sq + mean * mean - inv_keys * same_key;

    OperatorIdentityReport r;
    r.n = params.n;
    r.ell = params.ell;
    r.lambda = params.lambda;
    r.dim = static_cast<size_t>(d);
    double top = 0;
    for (const Matrix &m : f) {
        top = std::max(top, max_abs(m));
    }
    r.scale = std::max(1.0, top * top);
    r.residual = max_abs(lhs - rhs);
    r.pass = r.residual <= kIdentityTol * r.scale;
    return r;
}

std::vector<Matrix> random_operator_function(size_t n, size_t d, uint64_t seed) {
    require(n >= 1 && n <= 3 && d >= 1 && d <= 8, ErrorKind::Precondition, "operator functions need n <= 3, d <= 8");
    std::mt19937_64 rng(seed);
    std::vector<Matrix> f;
    for (uint64_t beta = 0; beta < (uint64_t{1} << (2 * n)); ++beta) {
        f.push_back(ginibre(d, d, rng));
    }
    return f;
}

TraceBoundReport check_trace_bound(const ExpansionParams &params, const BipartiteState &s,
                              const std::vector<std::pair<std::string, Matrix>> &sigma_list,
                              const std::string &state_label) {
    require_params(params, s);
    require(params.n <= 3 && s.dim_e <= kMaxEnvDim, ErrorKind::Resource,
            "trace-norm bound enumeration supports n <= 3 and dim_e <= 4");
    TraceBoundReport r;
    r.n = s.n;
    r.dim_e = s.dim_e;
    r.ell = params.ell;
    r.lambda = params.lambda;
    r.state_label = state_label;

    const Matrix target = decoupled(s);
    const uint64_t us = uint64_t{1} << params.lambda;
    const uint64_t vs = uint64_t{1} << params.tail_len;
    double sum = 0;
    for (uint64_t u = 0; u < us; ++u) {
        gf2::BitPoly ub = gf2::BitPoly::from_u64(u, params.lambda);
        for (uint64_t v = 0; v < vs; ++v) {
            sum += trace_norm(r_uv(ub, gf2::BitPoly::from_u64(v, params.tail_len), params, s) - target);
        }
    }
    r.lhs = sum / static_cast<double>(us * vs);

    auto holds = [&](double bound) { return r.lhs <= bound * (1 + 1e-9) + kStructuralTol; };
    const double gain = std::sqrt(std::ldexp(1.0, static_cast<int>(params.n) - static_cast<int>(params.ell)));
    r.pass = true;
    for (const auto &[label, sigma] : sigma_list) {
        SigmaCheck c;
        c.label = label;
        c.bound = gain * std::sqrt(sigma.trace().real()) * std::sqrt(collision_entropy_term(s, sigma));
        c.pass = holds(c.bound);
        r.pass = r.pass && c.pass;
        r.sigma.push_back(c);
    }
    const Matrix rho_a = partial_trace_e(s);
    if (max_abs(s.rho - kron(rho_a, partial_trace_a(s))) <= kStructuralTol) {
        double purity = (rho_a * rho_a).trace().real();
        r.product_bound = gain * std::sqrt(purity);
        r.product_pass = holds(*r.product_bound);
        r.pass = r.pass && r.product_pass;
    }
    return r;
}

QotpReport check_full_randomization(const BipartiteState &s, const std::string &state_label) {
    QotpReport r;
    r.n = s.n;
    r.dim_e = s.dim_e;
    r.state_label = state_label;
    r.residual = trace_norm(full_qotp_average(s) - decoupled(s));
    r.pass = r.residual <= kIdentityTol;
    return r;
}

namespace {

StateKind cycle_kind(size_t i, size_t n, size_t dim_e) {
    static const StateKind kinds[] = {StateKind::Pure, StateKind::Mixed, StateKind::Product, StateKind::MaxEntangled};
    StateKind k = kinds[i % 4];
    if (k == StateKind::MaxEntangled && dim_e != (size_t{1} << n)) {
        k = StateKind::Pure;
    }
    return k;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    std::seed_seq seq{seed, a, b, c};
    uint32_t words[2];
    seq.generate(words, words + 2);
    return (uint64_t{words[0]} << 32) | words[1];
}

std::string label_of(StateKind kind, size_t index) {
    return std::string(to_string(kind)) + "#" + std::to_string(index);
}

}  // namespace

std::vector<QotpReport> run_qotp_suite(uint64_t seed) {
    std::vector<QotpReport> out;
    for (size_t n = 1; n <= 3; ++n) {
        for (size_t dim_e : {1, 2, 4}) {
            for (size_t i = 0; i < 20; ++i) {
                StateKind kind = cycle_kind(i, n, dim_e);
                BipartiteState s = random_state(n, dim_e, kind, mix_seed(seed, 1, n * 16 + dim_e, i));
                out.push_back(check_full_randomization(s, label_of(kind, i)));
            }
        }
    }
    return out;
}

std::vector<AverageOverVReport> run_average_over_v_suite(uint64_t seed) {
    std::vector<AverageOverVReport> out;
    for (size_t n = 1; n <= 2; ++n) {
        for (size_t ell = 1; ell <= 2 * n; ++ell) {
            ExpansionParams p = ExpansionParams::make(n, ell, keyexpand::Mode::Quantum);
            for (size_t i = 0; i < 10; ++i) {
                size_t dim_e = size_t{1} << (i % 3);
                StateKind kind = cycle_kind(i, n, dim_e);
                BipartiteState s = random_state(n, dim_e, kind, mix_seed(seed, 2, n * 16 + ell, i));
                for (uint64_t u = 0; u < (uint64_t{1} << p.lambda); ++u) {
                    out.push_back(check_average_over_v(gf2::BitPoly::from_u64(u, p.lambda), p, s));
                }
            }
        }
    }
    return out;
}

std::vector<OperatorIdentityReport> run_operator_identity_suite(uint64_t seed, size_t count) {
    // (n, ell) covering lambda = ell and lambda = 2n − ell.
    static const std::pair<size_t, size_t> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {2, 2}, {2, 4}};
    static const size_t dims[] = {1, 2, 4, 3};
    std::vector<OperatorIdentityReport> out;
    for (size_t i = 0; i < count; ++i) {
        auto [n, ell] = shapes[i % std::size(shapes)];
        size_t d = dims[(i / std::size(shapes)) % std::size(dims)];
        ExpansionParams p = ExpansionParams::make(n, ell, keyexpand::Mode::Quantum);
        out.push_back(check_operator_identity(p, random_operator_function(n, d, mix_seed(seed, 3, i, 0))));
    }
    return out;
}

std::vector<TraceBoundReport> run_trace_bound_suite(uint64_t seed, bool *lhs_monotone) {
    std::vector<TraceBoundReport> out;
    bool monotone = true;
    for (size_t n = 1; n <= 2; ++n) {
        for (size_t i = 0; i < 10; ++i) {
            size_t dim_e = i == 0 ? size_t{1} << n : (i % 2 ? 2 : 4);
            StateKind kind = i == 0 ? StateKind::MaxEntangled : cycle_kind(i % 3, n, dim_e);
            BipartiteState s = random_state(n, dim_e, kind, mix_seed(seed, 4, n, i));
            std::vector<std::pair<std::string, Matrix>> sigmas;
            sigmas.emplace_back("rho_E", partial_trace_a(s));
            sigmas.emplace_back("tau_E", Matrix::Identity(static_cast<Eigen::Index>(dim_e),
                                                          static_cast<Eigen::Index>(dim_e)) /
                                             static_cast<double>(dim_e));
            for (size_t j = 0; j < 20; ++j) {
                sigmas.emplace_back("random#" + std::to_string(j), random_density(dim_e, mix_seed(seed, 5, n * 16 + i, j)));
            }
            double previous = INFINITY;
            for (size_t ell = 1; ell <= 2 * n; ++ell) {
                ExpansionParams p = ExpansionParams::make(n, ell, keyexpand::Mode::Quantum);
                out.push_back(check_trace_bound(p, s, sigmas, label_of(kind, i)));
                monotone = monotone && out.back().lhs <= previous + kStructuralTol;
                previous = out.back().lhs;
            }
        }
    }
    if (lhs_monotone != nullptr) {
        *lhs_monotone = monotone;
    }
    return out;
}

bool QuantumSuite::pass() const {
    auto ok = [](const auto &r) { return r.pass; };
    return std::all_of(qotp.begin(), qotp.end(), ok) && std::all_of(average_over_v.begin(), average_over_v.end(), ok) &&
           std::all_of(operator_identity.begin(), operator_identity.end(), ok) && std::all_of(trace_bound.begin(), trace_bound.end(), ok);
}

QuantumSuite run_quantum_suite(uint64_t seed) {
    QuantumSuite s;
    s.qotp = run_qotp_suite(seed);
    s.average_over_v = run_average_over_v_suite(seed);
    s.operator_identity = run_operator_identity_suite(seed);
    s.trace_bound = run_trace_bound_suite(seed, &s.lhs_monotone_in_ell);
    return s;
}

nlohmann::json to_json(const QuantumSuite &s) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &r : s.qotp) {
        checks.push_back({{"check", "full_randomization"},
                          {"n", r.n},
                          {"dim_e", r.dim_e},
                          {"state", r.state_label},
                          {"value", r.residual},
                          {"bound", kIdentityTol},
                          {"pass", r.pass}});
    }
    for (const auto &r : s.average_over_v) {
        checks.push_back({{"check", "average_over_v"},
                          {"n", r.n},
                          {"dim_e", r.dim_e},
                          {"ell", r.ell},
                          {"u", r.u},
                          {"value", r.residual},
                          {"bound", kIdentityTol},
                          {"pass", r.pass}});
    }
    for (const auto &r : s.operator_identity) {
        checks.push_back({{"check", "operator_identity"},
                          {"n", r.n},
                          {"ell", r.ell},
                          {"lambda", r.lambda},
                          {"dim", r.dim},
                          {"value", r.residual},
                          {"bound", kIdentityTol * r.scale},
                          {"pass", r.pass}});
    }
    for (const auto &r : s.trace_bound) {
        nlohmann::json sig = nlohmann::json::array();
        double tightest = INFINITY;
        for (const auto &c : r.sigma) {
            sig.push_back({{"sigma", c.label}, {"bound", c.bound}, {"pass", c.pass}});
            tightest = std::min(tightest, c.bound);
        }
        nlohmann::json rec = {{"check", "trace_norm_bound"},
                              {"n", r.n},
                              {"dim_e", r.dim_e},
                              {"ell", r.ell},
                              {"lambda", r.lambda},
                              {"state", r.state_label},
                              {"value", r.lhs},
                              {"bound", tightest},
                              {"sigma_checks", sig},
                              {"pass", r.pass}};
        if (r.product_bound) {
            rec["product_bound"] = *r.product_bound;
        }
        checks.push_back(rec);
    }
    return {{"suite", "quantum"},
            {"pass", s.pass()},
            {"lhs_monotone_in_ell", s.lhs_monotone_in_ell},
            {"checks", checks}};
}

std::string to_text(const QuantumSuite &s) {
    std::ostringstream os;
    auto mark = [](bool pass) { return pass ? "ok  " : "FAIL"; };
    auto count = [](const auto &v) {
        return std::count_if(v.begin(), v.end(), [](const auto &r) { return r.pass; });
    };
    auto worst = [](const auto &v, auto value) {
        double w = 0;
        for (const auto &r : v) {
            w = std::max(w, value(r));
        }
        return w;
    };
    os << mark(count(s.qotp) == static_cast<long>(s.qotp.size())) << " full_randomization " << count(s.qotp) << "/"
       << s.qotp.size() << " max residual " << fmt(worst(s.qotp, [](const auto &r) { return r.residual; })) << "\n";
    os << mark(count(s.average_over_v) == static_cast<long>(s.average_over_v.size())) << " average_over_v " << count(s.average_over_v) << "/"
       << s.average_over_v.size() << " max residual " << fmt(worst(s.average_over_v, [](const auto &r) { return r.residual; }))
       << "\n";
    os << mark(count(s.operator_identity) == static_cast<long>(s.operator_identity.size())) << " operator_identity " << count(s.operator_identity)
       << "/" << s.operator_identity.size() << " max relative residual "
       << fmt(worst(s.operator_identity, [](const auto &r) { return r.residual / r.scale; })) << "\n";
    for (const auto &r : s.trace_bound) {
        double tightest = INFINITY;
        for (const auto &c : r.sigma) {
            tightest = std::min(tightest, c.bound);
        }
        os << mark(r.pass) << " trace_norm_bound n=" << r.n << " dim_e=" << r.dim_e << " ell=" << r.ell << " "
           << r.state_label << " lhs=" << fmt(r.lhs) << " tightest=" << fmt(tightest);
        if (r.product_bound) {
            os << " product=" << fmt(*r.product_bound);
        }
        os << "\n";
    }
    os << "lhs nonincreasing in ell: " << (s.lhs_monotone_in_ell ? "yes" : "no") << " (recorded only)\n";
    os << (s.pass() ? "quantum suite passed" : "quantum suite FAILED") << "\n";
    return os.str();
}

}  // namespace entroseal::qsimlab
