#include "entroseal/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "entroseal/bench/bench.hpp"
#include "entroseal/error.hpp"
#include "entroseal/ese/scheme.hpp"
#include "entroseal/ese/wire.hpp"
#include "entroseal/gf2/verify.hpp"
#include "entroseal/qsimlab/qsim.hpp"
#include "entroseal/statlab/checks.hpp"
#include "json.hpp"

namespace entroseal::cli {

namespace {

using keyexpand::Mode;

constexpr const char *kDisclaimer =
    "Security is conditional: it holds only if --t is a genuine lower bound on the min-entropy of the "
    "plaintext (in bits, given everything the adversary knows). The tool cannot check this.";

std::vector<uint8_t> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Environment, "cannot open '" + path + "' for reading");
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        fail(ErrorKind::Environment, "error while reading '" + path + "'");
    }
    return bytes;
}

void write_file(const std::string &path, const std::vector<uint8_t> &bytes) {
    std::ofstream outf(path, std::ios::binary | std::ios::trunc);
    if (!outf) {
        fail(ErrorKind::Environment, "cannot open '" + path + "' for writing");
    }
    outf.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!outf) {
        fail(ErrorKind::Environment, "error while writing '" + path + "'");
    }
}

// Above this degree the deterministic modulus search is impractical (32768 already takes minutes).
constexpr size_t kMaxFieldDegree = 32768;

void require_feasible_field(const keyexpand::ExpansionParams &p) {
    require(p.tail_len == 0 || p.lambda <= kMaxFieldDegree, ErrorKind::Parameter,
            "this message needs arithmetic in GF(2^" + std::to_string(p.lambda) +
                "); the modulus search is supported up to degree " + std::to_string(kMaxFieldDegree) +
                " (about 8 KiB of plaintext at t = n/2)");
}

RandomSource make_rng(const std::optional<uint64_t> &seed) {
    return seed ? RandomSource::seeded(*seed) : RandomSource::system();
}

// First `ell` bits of the key file, or nullopt when the file is too short.
std::optional<gf2::BitPoly> key_bits(const std::vector<uint8_t> &bytes, size_t ell) {
    const size_t need = (ell + 7) / 8;
    if (bytes.size() < need) {
        return std::nullopt;
    }
    std::vector<uint8_t> prefix(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(need));
    if (ell % 8 != 0) {
        prefix.back() &= static_cast<uint8_t>((1u << (ell % 8)) - 1);
    }
    return gf2::BitPoly::from_bytes(prefix, ell);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parameter:
        case ErrorKind::Configuration:
        case ErrorKind::Precondition:
            return kExitParameters;
        case ErrorKind::Format:
            return kExitMalformed;
        case ErrorKind::Environment:
            return kExitIo;
        case ErrorKind::Resource:
        case ErrorKind::Domain:
            return kExitCheckFailed;
    }
    return kExitCheckFailed;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

struct Options {
    std::string format = "text";
    std::optional<size_t> n_bits;
    std::optional<double> t;
    std::optional<double> epsilon;
    std::string mode = "classical";
    std::optional<uint64_t> seed;
    std::optional<uint64_t> budget;
    std::string in, out, key;
    size_t key_bits = 0;
    std::vector<size_t> sizes;
    std::vector<std::string> methods;
    std::vector<std::string> backends;
    size_t reps = bench::kMinReps;
    bool counts_only = false;
    std::string json_out;
    std::string suite;
};

void add_format(CLI::App *cmd, Options &o) {
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
}

void add_params(CLI::App *cmd, Options &o, bool need_n) {
    auto *n = cmd->add_option("--n-bits", o.n_bits, "Message length n in bits (qubits in quantum mode)");
    if (need_n) {
        n->required();
    }
    cmd->add_option("--t", o.t, "Min-entropy lower bound t of the plaintext, in bits (no default)")->required();
    cmd->add_option("--epsilon", o.epsilon, "Target security parameter epsilon in (0, 1]")->required();
    cmd->add_option("--mode", o.mode, "classical or quantum")->check(CLI::IsMember({"classical", "quantum"}));
}

int cmd_params(const Options &o, std::ostream &out) {
    const Mode mode = keyexpand::parse_mode(o.mode);
    ese::SchemeParams p = ese::SchemeParams::derive(*o.n_bits, *o.t, *o.epsilon, mode);
    std::optional<size_t> advisory;
    if (mode == Mode::Quantum) {
        advisory = ese::advisory_indistinguishability_length(p.n, p.t, p.epsilon);
    }
    if (o.format == "json") {
        nlohmann::json j = {{"mode", o.mode},           {"n", p.n},
                            {"t", p.t},                 {"epsilon", p.epsilon},
                            {"ell", p.ell},             {"lambda", p.expansion.lambda},
                            {"tail_len", p.expansion.tail_len}, {"out_len", p.expansion.out_len}};
        if (advisory) {
            j["advisory_indistinguishability_ell"] = *advisory;
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "mode     " << o.mode << '\n'
        << "n        " << p.n << '\n'
        << "t        " << fmt_double(p.t) << '\n'
        << "epsilon  " << fmt_double(p.epsilon) << '\n'
        << "ell      " << p.ell << '\n'
        << "lambda   " << p.expansion.lambda << '\n'
        << "tail     " << p.expansion.tail_len << '\n';
    if (advisory) {
        out << "advisory indistinguishability ell (no +3 slack, not for encryption) " << *advisory << '\n';
    }
    return kExitOk;
}

int cmd_keygen(const Options &o, std::ostream &out) {
    require(o.key_bits >= 1, ErrorKind::Parameter, "--bits must be at least 1");
    RandomSource rng = make_rng(o.seed);
    write_file(o.out, rng.bits(o.key_bits).to_bytes());
    out << "wrote " << o.key_bits << " key bits to " << o.out << '\n';
    return kExitOk;
}

int cmd_encrypt(const Options &o, std::ostream &out, std::ostream &err) {
    require(o.mode == "classical", ErrorKind::Parameter,
            "encrypt handles classical files; quantum mode exists only in the simulator (verify quantum)");
    std::vector<uint8_t> message = read_file(o.in);
    std::vector<uint8_t> key_file = read_file(o.key);
    const size_t file_bits = 8 * message.size();
    const size_t n = o.n_bits.value_or(file_bits);
    require(n >= 1, ErrorKind::Parameter, "empty input: n = 0 bits");
    require(n >= file_bits, ErrorKind::Parameter,
            "--n-bits " + std::to_string(n) + " is shorter than the input (" + std::to_string(file_bits) + " bits)");
    ese::SchemeParams p = ese::SchemeParams::derive(n, *o.t, *o.epsilon, Mode::Classical);
    require_feasible_field(p.expansion);
    auto key = key_bits(key_file, p.ell);
    if (!key) {
        err << "error: key file supplies " << 8 * key_file.size() << " bits, need ell = " << p.ell << '\n';
        return kExitShortKey;
    }
    gf2::BitPoly x = gf2::BitPoly::from_bytes(message, file_bits).resized(n);
    RandomSource rng = make_rng(o.seed);
    ese::Ciphertext c = ese::encrypt(*key, x, p, rng);
    write_file(o.out, ese::serialize(c));
    if (o.format == "json") {
        out << nlohmann::json{{"n", n}, {"ell", p.ell}, {"lambda", p.expansion.lambda}, {"out", o.out}}.dump() << '\n';
    } else {
        out << "encrypted n = " << n << " bits with ell = " << p.ell << " key bits into " << o.out << '\n';
    }
    return kExitOk;
}

int cmd_decrypt(const Options &o, std::ostream &out, std::ostream &err) {
    std::vector<uint8_t> bytes = read_file(o.in);
    std::vector<uint8_t> key_file = read_file(o.key);
    ese::Ciphertext c = ese::deserialize(bytes);
    require_feasible_field(c.expansion());
    auto key = key_bits(key_file, c.ell);
    if (!key) {
        err << "error: key file supplies " << 8 * key_file.size() << " bits, need ell = " << c.ell << '\n';
        return kExitShortKey;
    }
    gf2::BitPoly x = ese::decrypt(*key, c);
    write_file(o.out, x.to_bytes());
    if (o.format == "json") {
        out << nlohmann::json{{"n", c.n}, {"ell", c.ell}, {"out", o.out}}.dump() << '\n';
    } else {
        out << "decrypted n = " << c.n << " bits into " << o.out << '\n';
    }
    return kExitOk;
}

int cmd_verify(const Options &o, std::ostream &out) {
    const uint64_t seed = o.seed.value_or(1);
    bool pass = false;
    if (o.suite == "classical") {
        statlab::ClassicalSuite s = statlab::run_classical_suite(3, 6, o.budget.value_or(statlab::default_budget()));
        pass = s.pass();
        out << (o.format == "json" ? to_json(s).dump(2) + "\n" : to_text(s));
    } else if (o.suite == "quantum") {
        qsimlab::QuantumSuite s = qsimlab::run_quantum_suite(seed);
        pass = s.pass();
        nlohmann::json j = to_json(s);
        j["seed"] = seed;
        out << (o.format == "json" ? j.dump(2) + "\n" : to_text(s));
    } else {
        auto checks = gf2::run_gf2_suite(seed);
        pass = gf2::suite_passed(checks);
        nlohmann::json j = to_json(checks);
        j["seed"] = seed;
        out << (o.format == "json" ? j.dump(2) + "\n" : to_text(checks));
    }
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const Options &o, std::ostream &out) {
    bench::BenchConfig c;
    c.mode = keyexpand::parse_mode(o.mode);
    if (c.mode == Mode::Classical) {
        require(o.t.has_value(), ErrorKind::Parameter, "classical bench sizing needs --t");
    }
    c.t = o.t.value_or(0);
    c.epsilon = o.epsilon.value_or(1.0 / 32);
    if (!o.sizes.empty()) {
        c.sizes = o.sizes;
    }
    for (const auto &m : o.methods) {
        c.methods.push_back(bench::parse_method(m));
    }
    if (!o.backends.empty()) {
        c.backends.clear();
        for (const auto &b : o.backends) {
            gf2::Backend backend = gf2::parse_backend(b);
            require(gf2::backend_available(backend), ErrorKind::Configuration,
                    "backend '" + b + "' is not built in this configuration");
            c.backends.push_back(backend);
        }
    }
    c.reps = o.reps;
    c.time = !o.counts_only;
    c.seed = o.seed.value_or(1);
    auto records = bench::run_bench(c);
    nlohmann::json twin = bench::emit_json(records, bench::environment_fingerprint());
    if (!o.json_out.empty()) {
        std::string text = twin.dump(2) + "\n";
        write_file(o.json_out, std::vector<uint8_t>(text.begin(), text.end()));
    }
    if (o.format == "json") {
        out << twin.dump(2) << '\n';
    } else {
        out << bench::emit_table(records) << "environment: " << bench::environment_fingerprint() << '\n';
        if (std::any_of(records.begin(), records.end(),
                        [](const auto &r) { return r.timing && r.timing->timer_warning; })) {
            out << "* median close to the timer resolution\n";
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"entroseal: entropically secure encryption with short keys"};
    app.footer(kDisclaimer);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto *params = app.add_subcommand("params", "Derive the key length for (n, t, epsilon, mode)");
    add_params(params, o, true);
    add_format(params, o);

    auto *keygen = app.add_subcommand("keygen", "Write a uniformly random key file");
    keygen->add_option("--bits", o.key_bits, "Key length in bits (see params)")->required();
    keygen->add_option("--out", o.out, "Key file")->required();
    keygen->add_option("--seed", o.seed, "Deterministic generator seed (testing only)");

    auto *encrypt = app.add_subcommand("encrypt", "Encrypt a file; n defaults to 8 x file size");
    encrypt->footer(kDisclaimer);
    add_params(encrypt, o, false);
    encrypt->add_option("--in", o.in, "Plaintext file")->required();
    encrypt->add_option("--key", o.key, "Key file (its first ell bits are used)")->required();
    encrypt->add_option("--out", o.out, "Ciphertext file")->required();
    encrypt->add_option("--seed", o.seed, "Seed for the public randomness (testing only)");
    add_format(encrypt, o);

    auto *decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
    decrypt->add_option("--in", o.in, "Ciphertext file")->required();
    decrypt->add_option("--key", o.key, "Key file")->required();
    decrypt->add_option("--out", o.out, "Plaintext file")->required();
    add_format(decrypt, o);

    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", o.suite, "classical, quantum or gf2")
        ->required()
        ->check(CLI::IsMember({"classical", "quantum", "gf2"}));
    verify->add_option("--budget", o.budget, "Enumeration budget in terms (overrides ENTROSEAL_BUDGET)");
    verify->add_option("--seed", o.seed, "Seed for random states and cases");
    add_format(verify, o);

    auto *benchmark = app.add_subcommand("bench", "Compare key-expansion cost against full-field multiplication");
    benchmark->add_option("--n-bits", o.sizes, "Pad lengths in bits (2n in quantum mode)")->delimiter(',');
    benchmark->add_option("--t", o.t, "Min-entropy bound used for sizing (quantum default 0)");
    benchmark->add_option("--epsilon", o.epsilon, "Sizing epsilon (default 2^-5)");
    benchmark->add_option("--mode", o.mode, "classical or quantum")->check(CLI::IsMember({"classical", "quantum"}));
    benchmark->add_option("--method", o.methods, "affine, dodis-smith, ambainis-smith")->delimiter(',');
    benchmark->add_option("--backend", o.backends, "schoolbook, karatsuba")->delimiter(',');
    benchmark->add_option("--reps", o.reps, "Timed repetitions (>= 31)");
    benchmark->add_option("--seed", o.seed, "Input seed");
    benchmark->add_flag("--counts-only", o.counts_only, "Skip timing");
    benchmark->add_option("--json-out", o.json_out, "Also write the machine-readable records here");
    add_format(benchmark, o);
    benchmark->preparse_callback([&o](size_t) { o.mode = "quantum"; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitParameters;
    }

    try {
        if (params->parsed()) {
            return cmd_params(o, out);
        }
        if (keygen->parsed()) {
            return cmd_keygen(o, out);
        }
        if (encrypt->parsed()) {
            return cmd_encrypt(o, out, err);
        }
        if (decrypt->parsed()) {
            return cmd_decrypt(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        return cmd_bench(o, out);
    } catch (const ese::FormatError &e) {
        err << "error: malformed ciphertext (" << ese::to_string(e.code()) << "): " << e.what() << '\n';
        return kExitMalformed;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

}  // namespace entroseal::cli
