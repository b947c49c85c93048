#include "tsrkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsrkit/errors.hpp"
#include "tsrkit/intfactor.hpp"
#include "tsrkit/tsr.hpp"

namespace tsrkit::cli {

namespace {

constexpr const char* kProgram = "tsrtool";
constexpr std::size_t kOracleBits = 24;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream o(path, std::ios::binary | std::ios::trunc);
    if (!o) throw ParseError("cannot write '" + path + "'");
    o.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string join(const std::vector<BigInt>& values, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += values[i].str();
    }
    return out;
}

std::string fixed3(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << x;
    return os.str();
}

void register_hints(const std::vector<std::string>& hints) {
    for (const auto& h : hints) add_known_factorization(Factorization::parse(h));
}

TsrState start_state(const TsrSpec& spec, const std::string& start_hex) {
    if (start_hex.empty()) return TsrState::unit(spec.m(), spec.n());
    return TsrState::from_hex(spec.m(), spec.n(), start_hex);
}

struct Options {
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t retries = 0;
    std::size_t jobs = 1;
    std::size_t words = 0;
    std::uint64_t steps = 1'000'000;
    std::string spec_path;
    std::string out_path;
    std::string start_hex;
    bool force = false;
    std::vector<std::string> factor_hints;
};

int cmd_generate(const Options& opt, std::ostream& out) {
    register_hints(opt.factor_hints);
    GenerateOptions gen;
    gen.retries_per_t = opt.retries;
    const GenerateResult result = generate_seeded(opt.m, opt.n, opt.seed, opt.jobs, gen);
    const std::string text = format_spec(result.spec);
    if (opt.out_path.empty()) {
        out << text;
    } else {
        write_file(opt.out_path, text);
    }
    out << "# Q=" << result.report.q.to_hex() << '\n';
    out << "# skipped_primes=" << join(result.report.skipped_primes, ",") << '\n';
    out << "# tested_primes=" << join(result.report.tested_primes, ",") << '\n';
    return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    register_hints(opt.factor_hints);
    const SpecFile file = parse_spec_file(read_file(opt.spec_path));
    const TsrSpec& spec = file.spec;
    const PolyF2 q = tsr_charpoly(spec);
    bool all_pass = true;
    auto report = [&](bool pass, const std::string& name, const std::string& detail = {}) {
        out << (pass ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) out << ": " << detail;
        out << '\n';
        all_pass = all_pass && pass;
    };

    const bool candidate = spec.tap(0);
    report(candidate, "candidate", candidate ? "a_0 = 1" : "not a candidate: a_0 = 0, f_S and lambda^n share lambda");
    if (file.recorded_q) {
        report(*file.recorded_q == q, "recorded Q", "Q=" + q.to_hex());
    }

    const bool ft_irreducible = is_irreducible(spec.f_t());
    report(ft_irreducible, "f_T irreducible", "f_T=" + spec.f_t().to_hex());
    if (ft_irreducible) {
        const Factorization l_fact = factor_mersenne(static_cast<unsigned>(spec.m()));
        report(is_primitive(spec.f_t(), l_fact), "f_T primitive");
    }
    if (candidate) {
        report(candidate_irreducible(spec), "lambda^n - alpha f_S irreducible over L");
    }
    const bool q_irreducible = is_irreducible(q);
    report(q_irreducible, "Q irreducible over F2");
    if (q_irreducible) {
        const Factorization k_fact = factor_mersenne(static_cast<unsigned>(spec.m() * spec.n()));
        report(is_primitive(q, k_fact), "Q primitive", "|K*| = " + k_fact.to_string());
    }
    return all_pass ? kSuccess : kVerificationFailed;
}

int cmd_period(const Options& opt, std::ostream& out) {
    const TsrSpec spec = parse_spec(read_file(opt.spec_path));
    out << brute_period(spec, start_state(spec, opt.start_hex), opt.force) << '\n';
    return kSuccess;
}

int cmd_stream(const Options& opt, std::ostream& out) {
    const TsrSpec spec = parse_spec(read_file(opt.spec_path));
    const Keystream ks = keystream(spec, start_state(spec, opt.start_hex), opt.words);
    const std::string_view bytes(reinterpret_cast<const char*>(ks.bytes.data()), ks.bytes.size());
    if (opt.out_path.empty()) {
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    } else {
        write_file(opt.out_path, bytes);
    }
    return kSuccess;
}

int cmd_charpoly(const Options& opt, std::ostream& out) {
    const TsrSpec spec = parse_spec(read_file(opt.spec_path));
    const PolyF2 q = tsr_charpoly(spec);
    out << "Q=" << q.to_hex() << '\n';
    if (spec.m() * spec.n() <= kOracleBits) {
        const bool agree = charpoly(block_tsr_matrix(spec.t(), spec.taps(), spec.n())) == q;
        out << "matrix oracle: " << (agree ? "agrees" : "DISAGREES") << '\n';
        if (!agree) return kVerificationFailed;
    }
    return kSuccess;
}

int cmd_prob(const Options& opt, std::ostream& out) {
    register_hints(opt.factor_hints);
    const auto m = static_cast<unsigned>(opt.m);
    const auto n = static_cast<unsigned>(opt.n);
    const PrimitivityEstimate est = primitivity_estimate(m, n);
    out << "phi(2^" << m * n << "-1)/(2^" << m * n << "-1) = " << fixed3(est.k_ratio) << '\n';
    out << "phi(2^" << m << "-1)/(2^" << m << "-1) = " << fixed3(est.l_ratio) << '\n';
    out << "probability = " << fixed3(est.probability) << '\n';
    return kSuccess;
}

template <typename Engine>
double steps_per_second(const TsrSpec& spec, std::uint64_t steps, std::uint64_t& checksum) {
    Engine engine(spec, TsrState::unit(spec.m(), spec.n()));
    const auto begin = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < steps; ++i) checksum ^= engine.step();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begin;
    return elapsed.count() > 0 ? static_cast<double>(steps) / elapsed.count() : 0.0;
}

int cmd_bench(const Options& opt, std::ostream& out) {
    register_hints(opt.factor_hints);
    const GenerateResult gen = generate_seeded(opt.m, opt.n, opt.seed, 1);
    std::uint64_t checksum = 0;
    const double external = steps_per_second<TsrEngine>(gen.spec, opt.steps, checksum);
    const double internal = steps_per_second<GaloisEngine>(gen.spec, opt.steps, checksum);
    out << std::fixed << std::setprecision(0);
    out << "external-xor: " << external << " steps/s\n";
    out << "internal-xor: " << internal << " steps/s\n";
    out << "checksum: " << std::hex << checksum << std::dec << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transformation shift registers over F2", kProgram};
    app.require_subcommand(1);
    Options opt;

    auto add_shape = [&](CLI::App* sub) {
        sub->add_option("-m", opt.m, "word size in bits")->required()->check(CLI::Range(1, 64));
        sub->add_option("-n", opt.n, "number of words")->required()->check(CLI::PositiveNumber);
    };
    auto add_hints = [&](CLI::App* sub) {
        sub->add_option("--factor-hint", opt.factor_hints, "known factorization 'N = p1^e1 * p2 * ...'");
    };

    auto* generate = app.add_subcommand("generate", "search for a primitive TSR");
    add_shape(generate);
    generate->add_option("--seed", opt.seed, "search seed");
    generate->add_option("--out", opt.out_path, "write the spec file here instead of stdout");
    generate->add_option("--retries", opt.retries, "tap vectors tried per transformation (default 4m)");
    generate->add_option("--jobs", opt.jobs, "parallel workers")->check(CLI::PositiveNumber);
    add_hints(generate);

    auto* verify = app.add_subcommand("verify", "recheck irreducibility and primitivity of a spec file");
    verify->add_option("file", opt.spec_path)->required();
    add_hints(verify);

    auto* period = app.add_subcommand("period", "brute-force period of a spec file");
    period->add_option("file", opt.spec_path)->required();
    period->add_option("--start", opt.start_hex, "start state (flat hex, default word0 = 1)");
    period->add_flag("--force", opt.force, "lift the 2^28 step guard");

    auto* stream = app.add_subcommand("stream", "emit keystream bytes");
    stream->add_option("file", opt.spec_path)->required();
    stream->add_option("--words", opt.words, "number of words")->required();
    stream->add_option("--start", opt.start_hex, "start state (flat hex, default word0 = 1)");
    stream->add_option("--out", opt.out_path, "write bytes here instead of stdout");

    auto* charpoly_cmd = app.add_subcommand("charpoly", "print the characteristic polynomial");
    charpoly_cmd->add_option("file", opt.spec_path)->required();

    auto* prob = app.add_subcommand("prob", "estimated primitivity probability of irreducible candidates");
    add_shape(prob);
    add_hints(prob);

    auto* bench = app.add_subcommand("bench", "stepping throughput of both engines");
    add_shape(bench);
    bench->add_option("--steps", opt.steps, "steps per engine");
    bench->add_option("--seed", opt.seed, "seed for the benchmarked spec");
    add_hints(bench);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) argv.push_back(kProgram);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << kProgram << ": " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*generate) return cmd_generate(opt, out);
        if (*verify) return cmd_verify(opt, out);
        if (*period) return cmd_period(opt, out);
        if (*stream) return cmd_stream(opt, out);
        if (*charpoly_cmd) return cmd_charpoly(opt, out);
        if (*prob) return cmd_prob(opt, out);
        if (*bench) return cmd_bench(opt, out);
    } catch (const LimitExceeded& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kInternalLimit;
    } catch (const FactoringIncomplete& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kInternalLimit;
    } catch (const std::exception& e) {
        err << kProgram << ": " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace tsrkit::cli
