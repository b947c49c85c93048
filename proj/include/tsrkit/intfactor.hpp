#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tsrkit/bigint.hpp"

namespace tsrkit {

struct PrimePower {
    BigInt prime;
    unsigned exponent = 1;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete prime factorization of `value`, primes strictly increasing.
class Factorization {
  public:
    Factorization() = default;  // the empty product, value 1

    /// Validates the invariants: product matches, primes increasing and prime.
    Factorization(BigInt value, std::vector<PrimePower> factors);

    const BigInt& value() const { return value_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    std::vector<BigInt> primes() const;
    bool divisible_by(const BigInt& p) const;

    /// `N = p1^e1 * p2 * ...` (exponent omitted when 1; `1 = 1` for the empty product).
    std::string to_string() const;
    static Factorization parse(std::string_view text);

    friend bool operator==(const Factorization&, const Factorization&) = default;

  private:
    BigInt value_ = 1;
    std::vector<PrimePower> factors_;
};

/// Largest d for which 2^d - 1 is factored automatically; beyond it a
/// factorization must be registered with add_known_factorization().
inline constexpr unsigned kMersenneFactoringBound = 96;

/// Trial-division bound applied before Pollard-rho.
inline constexpr unsigned kTrialDivisionBound = 1'000'000;

/// Miller-Rabin. Deterministic for n < 3.3e24, strong probable prime above.
bool is_probable_prime(const BigInt& n);

/// Complete factorization of n >= 1 (throws InvalidArgument for 0,
/// FactoringIncomplete if a composite resists splitting).
Factorization factor(const BigInt& n);

/// Factorization of 2^d - 1, pre-split along the cyclotomic factors of d and
/// memoized. Throws LimitExceeded when d > kMersenneFactoringBound and no
/// factorization was registered.
Factorization factor_mersenne(unsigned d);

/// Registers a user-supplied factorization (validated) in the shared memo cache.
void add_known_factorization(const Factorization& f);

/// phi(N)/N = prod over p | N of (1 - 1/p), exact.
Rational phi_ratio(const Factorization& fact);

struct PrimitivityEstimate {
    double k_ratio = 0;  // phi(|K*|)/|K*|, |K*| = 2^(mn) - 1
    double l_ratio = 0;  // phi(|L*|)/|L*|, |L*| = 2^m - 1
    double probability = 0;
};

/// Estimated probability that an irreducible candidate with primitive f_T is
/// primitive: phi-ratio of 2^(mn)-1 divided by phi-ratio of 2^m-1.
PrimitivityEstimate primitivity_estimate(unsigned m, unsigned n);
double primitivity_prob(unsigned m, unsigned n);

struct CoprimeSplit {
    BigInt k_l;  // product of prime powers of |K*| whose primes divide |L*|
    BigInt a;    // the cofactor, coprime to |L*|
};

CoprimeSplit coprime_part(const Factorization& k_fact, const Factorization& l_fact);

}  // namespace tsrkit
