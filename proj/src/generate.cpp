#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "tsrkit/errors.hpp"
#include "tsrkit/tsr.hpp"

namespace tsrkit {

namespace {

constexpr std::size_t kPrimitiveTrials = 10'000;

PolyF2 random_taps(std::size_t n, std::mt19937_64& rng) {
    std::vector<PolyF2::Limb> limbs((n + 63) / 64);
    for (std::size_t i = 0; i < limbs.size(); ++i) limbs[i] = random_bits(rng, std::min<std::size_t>(64, n - 64 * i));
    limbs[0] |= 1;  // a_0 = 1
    return PolyF2::from_limbs(std::move(limbs));
}

struct SearchContext {
    std::size_t m;
    std::size_t n;
    Factorization l_fact;
    Factorization k_fact;
    std::size_t retries;
};

SearchContext make_context(std::size_t m, std::size_t n, const GenerateOptions& options) {
    if (m == 0 || m > 64) throw InvalidArgument("word size m must be in 1..64");
    if (n == 0) throw InvalidArgument("number of words n must be positive");
    SearchContext ctx{m, n, factor_mersenne(static_cast<unsigned>(m)),
                      factor_mersenne(static_cast<unsigned>(m * n)),
                      options.retries_per_t != 0 ? options.retries_per_t : 4 * m};
    return ctx;
}

// One primitive T, then up to ctx.retries tap vectors.
std::optional<GenerateResult> try_transformation(const SearchContext& ctx, std::mt19937_64& rng,
                                                 std::size_t& candidates) {
    const MatF2 t = random_primitive_t(ctx.m, rng, ctx.l_fact);
    const TsrSpec base(ctx.m, ctx.n, t, PolyF2::one());
    for (std::size_t r = 0; r < ctx.retries; ++r) {
        TsrSpec spec = base.with_taps(random_taps(ctx.n, rng));
        ++candidates;
        if (!candidate_irreducible(spec)) continue;
        CandidateReport report = candidate_primitive(spec, ctx.k_fact, ctx.l_fact);
        if (report.primitive.value_or(false)) return GenerateResult{std::move(spec), std::move(report), 1, candidates};
    }
    return std::nullopt;
}

}  // namespace

MatF2 random_primitive_t(std::size_t m, std::mt19937_64& rng, const Factorization& fact_m) {
    if (m == 0 || m > 64) throw InvalidArgument("word size m must be in 1..64");
    for (std::size_t trial = 0; trial < kPrimitiveTrials; ++trial) {
        PolyF2 f = PolyF2::from_word(random_bits(rng, m));
        f.set_coeff(m, true);
        if (!is_irreducible(f) || !is_primitive(f, fact_m)) continue;
        return conjugate(companion(f), random_invertible(m, rng));
    }
    throw LimitExceeded("no primitive polynomial of degree " + std::to_string(m) + " found in " +
                        std::to_string(kPrimitiveTrials) + " trials");
}

GenerateResult generate(std::size_t m, std::size_t n, std::mt19937_64& rng, const GenerateOptions& options) {
    const SearchContext ctx = make_context(m, n, options);
    std::size_t candidates = 0;
    for (std::size_t k = 0; k < options.max_transformations; ++k) {
        if (auto found = try_transformation(ctx, rng, candidates)) {
            found->transformations_tried = k + 1;
            return std::move(*found);
        }
    }
    throw LimitExceeded("no primitive TSR found after " + std::to_string(options.max_transformations) +
                        " transformations");
}

std::mt19937_64 attempt_rng(std::uint64_t seed, std::uint64_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
    return std::mt19937_64(seq);
}

GenerateResult generate_seeded(std::size_t m, std::size_t n, std::uint64_t seed, std::size_t jobs,
                               const GenerateOptions& options) {
    if (jobs == 0) throw InvalidArgument("jobs must be positive");
    const SearchContext ctx = make_context(m, n, options);
    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t budget = options.max_transformations;

    std::atomic<std::uint64_t> best{kNone};
    std::mutex mu;
    std::map<std::uint64_t, GenerateResult> found;
    std::exception_ptr failure;

    auto worker = [&](std::uint64_t first) {
        try {
            for (std::uint64_t k = first; k < budget && k < best.load(); k += jobs) {
                std::mt19937_64 rng = attempt_rng(seed, k);
                std::size_t candidates = 0;
                auto result = try_transformation(ctx, rng, candidates);
                if (!result) continue;
                std::lock_guard lock(mu);
                found.emplace(k, std::move(*result));
                std::uint64_t cur = best.load();
                while (k < cur && !best.compare_exchange_weak(cur, k)) {
                }
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            best.store(0);
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& th : threads) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    if (best.load() == kNone) {
        throw LimitExceeded("no primitive TSR found after " + std::to_string(budget) + " transformations");
    }
    GenerateResult result = std::move(found.at(best.load()));
    result.transformations_tried = best.load() + 1;
    return result;
}

}  // namespace tsrkit
