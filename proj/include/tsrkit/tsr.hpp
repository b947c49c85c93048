#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsrkit/bigint.hpp"
#include "tsrkit/extfield.hpp"
#include "tsrkit/intfactor.hpp"
#include "tsrkit/mat2.hpp"
#include "tsrkit/poly2.hpp"

namespace tsrkit {

/// A TSR step <T, S>: word size m (1..64), n words, transformation T on
/// F2^m and taps S = <a_0, ..., a_{n-1}> stored as f_S = sum a_i lambda^i.
class TsrSpec {
  public:
    TsrSpec(std::size_t m, std::size_t n, MatF2 t, PolyF2 taps);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    const MatF2& t() const { return t_; }
    /// f_S; bit i is a_i.
    const PolyF2& taps() const { return taps_; }
    bool tap(std::size_t i) const { return taps_.coeff(i); }
    /// f_T = charpoly(T), cached at construction.
    const PolyF2& f_t() const { return f_t_; }

    /// Same T (and cached f_T) with different taps.
    TsrSpec with_taps(PolyF2 taps) const;

    friend bool operator==(const TsrSpec& a, const TsrSpec& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.t_ == b.t_ && a.taps_ == b.taps_;
    }

  private:
    std::size_t m_;
    std::size_t n_;
    MatF2 t_;
    PolyF2 taps_;
    PolyF2 f_t_;
};

/// Register contents (v_0, ..., v_{n-1}), each word m bits.
class TsrState {
  public:
    TsrState(std::size_t m, std::vector<std::uint64_t> words);
    static TsrState zero(std::size_t m, std::size_t n);
    /// v_0 = 1, all other words zero.
    static TsrState unit(std::size_t m, std::size_t n);

    /// Flat hex encoding: bit i*m + b is bit b of word i.
    static TsrState from_hex(std::size_t m, std::size_t n, std::string_view text);
    std::string to_hex() const;

    std::size_t m() const { return m_; }
    std::size_t n() const { return words_.size(); }
    const std::vector<std::uint64_t>& words() const { return words_; }
    bool is_zero() const;

    /// Flattened state as a vector over F2 (requires n*m <= 64).
    BitVec flatten() const;
    static TsrState unflatten(std::size_t m, std::size_t n, const BitVec& v);

    friend bool operator==(const TsrState&, const TsrState&) = default;

  private:
    std::size_t m_;
    std::vector<std::uint64_t> words_;
};

/// (v_1, ..., v_{n-1}, T(a_0 v_0 + ... + a_{n-1} v_{n-1})).
TsrState tsr_step(const TsrSpec& spec, const TsrState& state);

/// Internal-xor form: the transpose of the block transition matrix, i.e.
/// v'_0 = a_0 T^t v_{n-1} and v'_j = v_{j-1} + a_j T^t v_{n-1}.
TsrState galois_step(const TsrSpec& spec, const TsrState& state);

/// In-place stepping with a ring buffer; each step outputs the evicted v_0.
class TsrEngine {
  public:
    TsrEngine(const TsrSpec& spec, const TsrState& start);

    std::uint64_t step();
    TsrState state() const;

  private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::uint64_t> columns_;  // T applied to unit vectors
    std::vector<std::size_t> tap_index_;
    std::vector<std::uint64_t> ring_;
    std::size_t head_ = 0;
};

/// In-place internal-xor stepping; each step outputs the evicted v_{n-1}.
class GaloisEngine {
  public:
    GaloisEngine(const TsrSpec& spec, const TsrState& start);

    std::uint64_t step();
    TsrState state() const;

  private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::uint64_t> columns_;  // columns of T^t
    std::vector<std::size_t> tap_index_;  // j >= 1 with a_j = 1
    bool tap0_;
    std::vector<std::uint64_t> ring_;
    std::size_t head_ = 0;
};

/// f_S^m * f_T(lambda^n / f_S).
PolyF2 tsr_charpoly(const TsrSpec& spec);

/// lambda^n - alpha f_S over L = F2[lambda]/(f_T), alpha the class of lambda.
PolyExt candidate_poly_ext(const TsrSpec& spec, const ExtField& field);

/// Irreducibility of the characteristic polynomial through the extension
/// field. Throws NotACandidate when a_0 = 0; false when f_T is reducible.
bool candidate_irreducible(const TsrSpec& spec);

enum class PrimeSkip {
    kSkipFieldPrimes,  // omit primes dividing |L*| and short-circuit on non-primitive f_T
    kTestAllPrimes,    // plain primitivity test of Q over every prime of |K*|
};

struct CandidateReport {
    PolyF2 f_s;
    PolyF2 f_t;
    PolyF2 q;
    bool irreducible = false;
    std::optional<bool> primitive;
    bool f_t_primitive = false;
    std::vector<BigInt> skipped_primes;
    std::vector<BigInt> tested_primes;
};

/// Primitivity of Q for an irreducible candidate. `k_fact` factors
/// 2^(mn) - 1 and `l_fact` factors 2^m - 1.
CandidateReport candidate_primitive(const TsrSpec& spec, const Factorization& k_fact, const Factorization& l_fact,
                                    PrimeSkip mode = PrimeSkip::kSkipFieldPrimes);

/// Default cost guard for brute_period: m*n <= 28.
inline constexpr std::size_t kPeriodGuardBits = 28;

/// Least t >= 1 with step^t(start) = start, by stepping.
BigInt brute_period(const TsrSpec& spec, const TsrState& start, bool force = false);

/// Companion matrix of a random primitive polynomial of degree m,
/// conjugated by a random invertible matrix.
MatF2 random_primitive_t(std::size_t m, std::mt19937_64& rng, const Factorization& fact_m);

struct GenerateOptions {
    std::size_t retries_per_t = 0;  // 0 selects 4*m
    std::size_t max_transformations = 10'000;
};

struct GenerateResult {
    TsrSpec spec;
    CandidateReport report;
    std::size_t transformations_tried = 0;
    std::size_t candidates_tried = 0;
};

/// The primitive-TSR search: pick a primitive T, then up to retries_per_t
/// tap vectors with a_0 = 1, keep the first whose Q is primitive.
GenerateResult generate(std::size_t m, std::size_t n, std::mt19937_64& rng, const GenerateOptions& options = {});

/// Seeded search split into numbered attempts; attempt k draws from its own
/// engine derived from (seed, k) and tries one T. Workers take attempts
/// k = w, w + jobs, ...; the lowest successful k wins, so the result does not
/// depend on `jobs`.
GenerateResult generate_seeded(std::size_t m, std::size_t n, std::uint64_t seed, std::size_t jobs = 1,
                               const GenerateOptions& options = {});

/// Engine for attempt `attempt` of a seeded search.
std::mt19937_64 attempt_rng(std::uint64_t seed, std::uint64_t attempt);

/// Emits the evicted word of each step as ceil(m/8) little-endian bytes.
struct Keystream {
    std::vector<std::uint8_t> bytes;
    TsrState final_state;
};
Keystream keystream(const TsrSpec& spec, const TsrState& state, std::size_t count);

// ---------------------------------------------------------------------------
// Spec files: line-oriented key=value (m, n, T, S, optional Q).

struct SpecFile {
    TsrSpec spec;
    std::optional<PolyF2> recorded_q;
};

/// Parses without checking Q.
SpecFile parse_spec_file(std::string_view text);
/// Parses and rejects a recorded Q that differs from the recomputed one.
TsrSpec parse_spec(std::string_view text);
std::string format_spec(const TsrSpec& spec, bool include_q = true);

}  // namespace tsrkit
