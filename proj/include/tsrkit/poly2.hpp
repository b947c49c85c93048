#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsrkit/bigint.hpp"
#include "tsrkit/intfactor.hpp"

namespace tsrkit {

/// Polynomial over F2, dense and bit-packed: bit i of the limb array is the
/// coefficient of lambda^i. Limbs are kept canonical (no zero top limb), so
/// the zero polynomial has an empty limb array and no degree.
class PolyF2 {
  public:
    using Limb = std::uint64_t;
    static constexpr std::size_t kLimbBits = 64;

    PolyF2() = default;

    static PolyF2 zero() { return {}; }
    static PolyF2 one() { return from_word(1); }
    static PolyF2 from_word(std::uint64_t bits);
    static PolyF2 from_limbs(std::vector<Limb> limbs);
    /// lambda^k
    static PolyF2 monomial(std::size_t k);

    /// Hex integer, optional 0x prefix: bit i of the integer is the coefficient of lambda^i.
    static PolyF2 from_hex(std::string_view text);
    std::string to_hex() const;

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }

    /// Empty for the zero polynomial.
    std::optional<std::size_t> degree() const;
    /// Degree of a nonzero polynomial; throws InvalidArgument on zero.
    std::size_t deg() const;

    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i, bool value);

    /// Low 64 coefficients as a word; throws if the degree is 64 or more.
    std::uint64_t to_word() const;
    std::span<const Limb> limbs() const { return limbs_; }

    PolyF2 shifted(std::size_t k) const;  // * lambda^k
    PolyF2 square() const;

    PolyF2& operator+=(const PolyF2& rhs);
    friend PolyF2 operator+(PolyF2 lhs, const PolyF2& rhs) { return lhs += rhs; }
    // Subtraction is addition in characteristic 2.
    friend PolyF2 operator-(PolyF2 lhs, const PolyF2& rhs) { return lhs += rhs; }
    friend PolyF2 operator*(const PolyF2& lhs, const PolyF2& rhs);
    PolyF2& operator*=(const PolyF2& rhs) { return *this = *this * rhs; }

    friend bool operator==(const PolyF2&, const PolyF2&) = default;

  private:
    void trim();

    std::vector<Limb> limbs_;
};

std::ostream& operator<<(std::ostream& os, const PolyF2& p);

struct PolyDivRem {
    PolyF2 quotient;
    PolyF2 remainder;
};

/// a = q*b + r with deg r < deg b. Throws InvalidArgument when b = 0.
PolyDivRem divrem(const PolyF2& a, const PolyF2& b);
PolyF2 mod(const PolyF2& a, const PolyF2& b);

/// Monic gcd; gcd(0, 0) throws.
PolyF2 gcd(const PolyF2& a, const PolyF2& b);

PolyF2 mulmod(const PolyF2& a, const PolyF2& b, const PolyF2& modulus);

/// base^e mod modulus by square-and-multiply; modulus must have degree >= 1.
PolyF2 powmod(const PolyF2& base, const BigInt& e, const PolyF2& modulus);

/// Irreducibility over F2: lambda^(2^d) = lambda mod f and
/// gcd(lambda^(2^(d/p)) - lambda, f) = 1 for every prime p | d.
bool is_irreducible(const PolyF2& f);

/// True iff lambda has order 2^d - 1 modulo the irreducible f.
/// `fact` must be the complete factorization of 2^deg(f) - 1.
bool is_primitive(const PolyF2& f, const Factorization& fact);

/// Multiplicative order of `base` modulo `modulus`, where `group_order`
/// factors a multiple of that order (base^value = 1 is checked).
BigInt multiplicative_order(const PolyF2& base, const PolyF2& modulus, const Factorization& group_order);

/// g^deg(q) * q(f/g) = sum_i q_i f^i g^(deg q - i).
PolyF2 homogeneous_compose(const PolyF2& q, const PolyF2& g, const PolyF2& f);

/// Number of distinct monic irreducible factors, from the dimension of the
/// fixed space of Frobenius on F2[lambda]/(f). Valid with repeated factors.
std::size_t count_distinct_irreducible_factors(const PolyF2& f);

}  // namespace tsrkit
