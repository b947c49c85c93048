#include "tsrkit/tsr.hpp"

#include <bit>

#include "tsrkit/errors.hpp"

namespace tsrkit {

namespace {

std::uint64_t word_mask(std::size_t m) { return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1; }

std::uint64_t apply_columns(const std::vector<std::uint64_t>& columns, std::uint64_t v) {
    std::uint64_t out = 0;
    while (v != 0) {
        out ^= columns[static_cast<std::size_t>(std::countr_zero(v))];
        v &= v - 1;
    }
    return out;
}

std::vector<std::uint64_t> columns_of(const MatF2& t) {
    std::vector<std::uint64_t> cols(t.dim(), 0);
    for (std::size_t r = 0; r < t.dim(); ++r) {
        for (std::size_t c = 0; c < t.dim(); ++c) {
            if (t.at(r, c)) cols[c] |= std::uint64_t{1} << r;
        }
    }
    return cols;
}

void check_compatible(const TsrSpec& spec, const TsrState& state) {
    if (state.m() != spec.m() || state.n() != spec.n()) {
        throw InvalidArgument("state shape " + std::to_string(state.n()) + "x" + std::to_string(state.m()) +
                              " does not match spec " + std::to_string(spec.n()) + "x" + std::to_string(spec.m()));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// TsrSpec / TsrState

TsrSpec::TsrSpec(std::size_t m, std::size_t n, MatF2 t, PolyF2 taps)
    : m_(m), n_(n), t_(std::move(t)), taps_(std::move(taps)) {
    if (m == 0 || m > 64) throw InvalidArgument("word size m must be in 1..64");
    if (n == 0) throw InvalidArgument("number of words n must be positive");
    if (t_.dim() != m) throw InvalidArgument("T must be " + std::to_string(m) + "x" + std::to_string(m));
    if (!taps_.is_zero() && taps_.deg() >= n) throw InvalidArgument("S has taps beyond a_{n-1}");
    f_t_ = charpoly(t_);
}

TsrSpec TsrSpec::with_taps(PolyF2 taps) const {
    if (!taps.is_zero() && taps.deg() >= n_) throw InvalidArgument("S has taps beyond a_{n-1}");
    TsrSpec out = *this;
    out.taps_ = std::move(taps);
    return out;
}

TsrState::TsrState(std::size_t m, std::vector<std::uint64_t> words) : m_(m), words_(std::move(words)) {
    if (m == 0 || m > 64) throw InvalidArgument("word size m must be in 1..64");
    if (words_.empty()) throw InvalidArgument("state needs at least one word");
    for (auto w : words_) {
        if (w & ~word_mask(m)) throw InvalidArgument("state word exceeds " + std::to_string(m) + " bits");
    }
}

TsrState TsrState::zero(std::size_t m, std::size_t n) { return TsrState(m, std::vector<std::uint64_t>(n, 0)); }

TsrState TsrState::unit(std::size_t m, std::size_t n) {
    std::vector<std::uint64_t> words(n, 0);
    words.at(0) = 1;
    return TsrState(m, std::move(words));
}

TsrState TsrState::from_hex(std::size_t m, std::size_t n, std::string_view text) {
    const PolyF2 flat = PolyF2::from_hex(text);
    if (!flat.is_zero() && flat.deg() >= m * n) throw ParseError("state " + std::string(text) + " exceeds n*m bits");
    std::vector<std::uint64_t> words(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t b = 0; b < m; ++b) {
            if (flat.coeff(i * m + b)) words[i] |= std::uint64_t{1} << b;
        }
    }
    return TsrState(m, std::move(words));
}

std::string TsrState::to_hex() const {
    PolyF2 flat;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (std::size_t b = 0; b < m_; ++b) {
            if ((words_[i] >> b) & 1) flat.set_coeff(i * m_ + b, true);
        }
    }
    return flat.to_hex();
}

bool TsrState::is_zero() const {
    for (auto w : words_) {
        if (w != 0) return false;
    }
    return true;
}

BitVec TsrState::flatten() const {
    if (m_ * words_.size() > 64) throw InvalidArgument("flattened state larger than 64 bits");
    BitVec v{0, m_ * words_.size()};
    for (std::size_t i = 0; i < words_.size(); ++i) v.bits |= words_[i] << (i * m_);
    return v;
}

TsrState TsrState::unflatten(std::size_t m, std::size_t n, const BitVec& v) {
    if (v.size != m * n) throw InvalidArgument("flattened vector length does not match n*m");
    std::vector<std::uint64_t> words(n);
    for (std::size_t i = 0; i < n; ++i) words[i] = (v.bits >> (i * m)) & word_mask(m);
    return TsrState(m, std::move(words));
}

// ---------------------------------------------------------------------------
// Stepping

TsrState tsr_step(const TsrSpec& spec, const TsrState& state) {
    check_compatible(spec, state);
    const auto& v = state.words();
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (spec.tap(i)) sum ^= v[i];
    }
    std::vector<std::uint64_t> next(v.begin() + 1, v.end());
    next.push_back(apply(spec.t(), BitVec{sum, spec.m()}).bits);
    return TsrState(spec.m(), std::move(next));
}

TsrState galois_step(const TsrSpec& spec, const TsrState& state) {
    check_compatible(spec, state);
    const auto& v = state.words();
    const std::uint64_t feedback = apply(spec.t().transposed(), BitVec{v.back(), spec.m()}).bits;
    std::vector<std::uint64_t> next(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        next[j] = (j > 0 ? v[j - 1] : 0) ^ (spec.tap(j) ? feedback : 0);
    }
    return TsrState(spec.m(), std::move(next));
}

TsrEngine::TsrEngine(const TsrSpec& spec, const TsrState& start)
    : m_(spec.m()), n_(spec.n()), columns_(columns_of(spec.t())), ring_(start.words()) {
    check_compatible(spec, start);
    for (std::size_t i = 0; i < n_; ++i) {
        if (spec.tap(i)) tap_index_.push_back(i);
    }
}

std::uint64_t TsrEngine::step() {
    std::uint64_t sum = 0;
    for (std::size_t i : tap_index_) {
        std::size_t slot = head_ + i;
        if (slot >= n_) slot -= n_;
        sum ^= ring_[slot];
    }
    const std::uint64_t out = ring_[head_];
    ring_[head_] = apply_columns(columns_, sum);
    head_ = head_ + 1 == n_ ? 0 : head_ + 1;
    return out;
}

TsrState TsrEngine::state() const {
    std::vector<std::uint64_t> words(n_);
    for (std::size_t i = 0; i < n_; ++i) words[i] = ring_[(head_ + i) % n_];
    return TsrState(m_, std::move(words));
}

GaloisEngine::GaloisEngine(const TsrSpec& spec, const TsrState& start)
    : m_(spec.m()), n_(spec.n()), columns_(columns_of(spec.t().transposed())), tap0_(spec.tap(0)),
      ring_(start.words()) {
    check_compatible(spec, start);
    for (std::size_t j = 1; j < n_; ++j) {
        if (spec.tap(j)) tap_index_.push_back(j);
    }
}

std::uint64_t GaloisEngine::step() {
    // The slot of v_{n-1} becomes the new v_0.
    const std::size_t last = head_ == 0 ? n_ - 1 : head_ - 1;
    const std::uint64_t out = ring_[last];
    const std::uint64_t feedback = apply_columns(columns_, out);
    head_ = last;
    ring_[head_] = tap0_ ? feedback : 0;
    for (std::size_t j : tap_index_) {
        std::size_t slot = head_ + j;
        if (slot >= n_) slot -= n_;
        ring_[slot] ^= feedback;
    }
    return out;
}

TsrState GaloisEngine::state() const {
    std::vector<std::uint64_t> words(n_);
    for (std::size_t i = 0; i < n_; ++i) words[i] = ring_[(head_ + i) % n_];
    return TsrState(m_, std::move(words));
}

// ---------------------------------------------------------------------------
// Algebra

PolyF2 tsr_charpoly(const TsrSpec& spec) {
    return homogeneous_compose(spec.f_t(), spec.taps(), PolyF2::monomial(spec.n()));
}

PolyExt candidate_poly_ext(const TsrSpec& spec, const ExtField& field) {
    if (field.modulus() != spec.f_t()) throw InvalidArgument("field modulus differs from f_T");
    const ExtField::Word alpha = field.alpha().word();
    std::vector<ExtField::Word> coeffs(spec.n() + 1, 0);
    coeffs[spec.n()] = 1;
    for (std::size_t i = 0; i < spec.n(); ++i) {
        if (spec.tap(i)) coeffs[i] = alpha;
    }
    return PolyExt(field, std::move(coeffs));
}

bool candidate_irreducible(const TsrSpec& spec) {
    if (!spec.tap(0)) {
        throw NotACandidate("not a candidate: a_0 = 0, so f_S and lambda^n share the factor lambda");
    }
    if (!is_irreducible(spec.f_t())) return false;
    const ExtField field(spec.f_t());
    return poly_ext_irreducible(candidate_poly_ext(spec, field));
}

CandidateReport candidate_primitive(const TsrSpec& spec, const Factorization& k_fact, const Factorization& l_fact,
                                    PrimeSkip mode) {
    const auto mn = static_cast<unsigned>(spec.m() * spec.n());
    if (k_fact.value() != mersenne(mn)) throw InvalidArgument("k_fact must factor 2^(mn) - 1");
    if (l_fact.value() != mersenne(static_cast<unsigned>(spec.m()))) throw InvalidArgument("l_fact must factor 2^m - 1");

    CandidateReport report;
    report.f_s = spec.taps();
    report.f_t = spec.f_t();
    report.q = tsr_charpoly(spec);
    report.irreducible =
        mode == PrimeSkip::kSkipFieldPrimes ? candidate_irreducible(spec) : is_irreducible(report.q);
    if (!report.irreducible) {
        throw InvalidArgument("primitivity test needs an irreducible candidate, Q = " + report.q.to_hex());
    }
    report.f_t_primitive = is_primitive(report.f_t, l_fact);
    if (mode == PrimeSkip::kSkipFieldPrimes && !report.f_t_primitive) {
        report.primitive = false;
        return report;
    }

    const PolyF2 lambda = PolyF2::monomial(1);
    report.primitive = report.q.coeff(0);  // Q = lambda: lambda is not a unit
    for (const BigInt& p : k_fact.primes()) {
        if (mode == PrimeSkip::kSkipFieldPrimes && l_fact.divisible_by(p)) {
            report.skipped_primes.push_back(p);
            continue;
        }
        report.tested_primes.push_back(p);
        if (*report.primitive && powmod(lambda, k_fact.value() / p, report.q).is_one()) report.primitive = false;
    }
    return report;
}

BigInt brute_period(const TsrSpec& spec, const TsrState& start, bool force) {
    check_compatible(spec, start);
    if (start.is_zero()) throw InvalidArgument("period of the zero state is not defined");
    const std::size_t m = spec.m(), n = spec.n(), bits = m * n;
    if (bits > kPeriodGuardBits && !force) {
        throw LimitExceeded("brute-force period needs up to 2^" + std::to_string(bits) + " steps (guard 2^" +
                            std::to_string(kPeriodGuardBits) + "); pass force to override");
    }

    if (bits <= 64) {
        // Packed stepping: word i lives at bits [i*m, (i+1)*m).
        const std::vector<std::uint64_t> columns = columns_of(spec.t());
        std::vector<std::size_t> shifts;
        for (std::size_t i = 0; i < n; ++i) {
            if (spec.tap(i)) shifts.push_back(i * m);
        }
        const std::uint64_t mask = word_mask(m);
        const std::uint64_t begin = start.flatten().bits;
        const std::uint64_t limit = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits);
        std::uint64_t s = begin;
        for (std::uint64_t t = 1; t <= limit; ++t) {
            std::uint64_t sum = 0;
            for (std::size_t sh : shifts) sum ^= (s >> sh) & mask;
            const std::uint64_t fresh = apply_columns(columns, sum);
            s = n == 1 ? fresh : (s >> m) | (fresh << ((n - 1) * m));
            if (s == begin) return BigInt(t);
        }
        throw InvalidArgument("start state never recurs (transition is singular)");
    }

    TsrEngine engine(spec, start);
    BigInt t = 0;
    const BigInt limit = BigInt(1) << bits;
    do {
        engine.step();
        ++t;
        if (t > limit) throw InvalidArgument("start state never recurs (transition is singular)");
    } while (engine.state() != start);
    return t;
}

Keystream keystream(const TsrSpec& spec, const TsrState& state, std::size_t count) {
    TsrEngine engine(spec, state);
    const std::size_t width = (spec.m() + 7) / 8;
    Keystream out{{}, state};
    out.bytes.reserve(count * width);
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t word = engine.step();
        for (std::size_t b = 0; b < width; ++b) out.bytes.push_back(static_cast<std::uint8_t>(word >> (8 * b)));
    }
    out.final_state = engine.state();
    return out;
}

}  // namespace tsrkit
