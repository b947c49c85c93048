#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "tsrkit/bigint.hpp"
#include "tsrkit/intfactor.hpp"
#include "tsrkit/poly2.hpp"

namespace tsrkit {

class ExtElem;

/// The field L = F2[lambda]/(f) for an irreducible f of degree 1..64.
/// Elements are stored as words (bit i = coefficient of lambda^i, degree < m).
/// The context is immutable and shared by every element and polynomial over it.
class ExtField {
  public:
    using Word = std::uint64_t;
    static constexpr std::size_t kMaxDegree = 64;

    /// Throws InvalidArgument when f is reducible or of unsupported degree.
    explicit ExtField(const PolyF2& modulus);

    const PolyF2& modulus() const { return impl_->modulus; }
    std::size_t degree() const { return impl_->m; }
    /// |L*| = 2^m - 1
    const BigInt& order_star() const { return impl_->order_star; }

    ExtElem zero() const;
    ExtElem one() const;
    /// The class of lambda, a root of the modulus.
    ExtElem alpha() const;
    ExtElem element(const PolyF2& rep) const;  // reduced mod the modulus
    ExtElem element_from_word(Word w) const;   // must already be reduced

    // Raw word arithmetic for the polynomial layer.
    Word mul(Word a, Word b) const;
    Word square(Word a) const { return mul(a, a); }
    Word pow(Word a, const BigInt& e) const;
    Word inv(Word a) const;

    friend bool operator==(const ExtField& a, const ExtField& b) {
        return a.impl_ == b.impl_ || a.impl_->modulus == b.impl_->modulus;
    }

  private:
    struct Impl {
        PolyF2 modulus;
        std::size_t m = 0;
        Word low = 0;  // modulus without its leading term
        BigInt order_star;
    };
    std::shared_ptr<const Impl> impl_;
};

class ExtElem {
  public:
    ExtElem(ExtField field, ExtField::Word rep) : field_(std::move(field)), rep_(rep) {}

    const ExtField& field() const { return field_; }
    ExtField::Word word() const { return rep_; }
    PolyF2 rep() const { return PolyF2::from_word(rep_); }
    bool is_zero() const { return rep_ == 0; }
    bool is_one() const { return rep_ == 1; }

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
    friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.field_ == b.field_ && a.rep_ == b.rep_; }

  private:
    ExtField field_;
    ExtField::Word rep_;
};

std::ostream& operator<<(std::ostream& os, const ExtElem& x);

/// Throws InvalidArgument on x = 0.
ExtElem inv(const ExtElem& x);
ExtElem pow(const ExtElem& x, const BigInt& e);
/// x^2, the generator of Gal(L/F2).
ExtElem frobenius(const ExtElem& x);

/// Multiplicative order of x != 0; `fact` must factor |L*|.
BigInt element_order(const ExtElem& x, const Factorization& fact);
/// |L*| / order(x).
BigInt index_of(const ExtElem& x, const Factorization& fact);

/// Polynomial over an ExtField; coefficient i multiplies lambda^i, leading
/// coefficient nonzero (empty for the zero polynomial).
class PolyExt {
  public:
    using Word = ExtField::Word;

    explicit PolyExt(ExtField field) : field_(std::move(field)) {}
    PolyExt(ExtField field, std::vector<Word> coeffs);
    PolyExt(ExtField field, const std::vector<ExtElem>& coeffs);

    /// Embeds a polynomial over F2.
    static PolyExt embed(ExtField field, const PolyF2& p);
    static PolyExt monomial(ExtField field, std::size_t k, Word c = 1);

    const ExtField& field() const { return field_; }
    const std::vector<Word>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Throws on zero.
    std::size_t deg() const;
    ExtElem coeff(std::size_t i) const;
    ExtElem leading() const;
    bool is_constant() const { return coeffs_.size() <= 1; }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    PolyExt monic() const;
    /// Every coefficient mapped c -> c^(2^k).
    PolyExt frobenius_map(std::size_t k = 1) const;

    friend PolyExt operator+(const PolyExt& a, const PolyExt& b);
    friend PolyExt operator-(const PolyExt& a, const PolyExt& b) { return a + b; }
    friend PolyExt operator*(const PolyExt& a, const PolyExt& b);
    friend PolyExt operator*(const ExtElem& c, const PolyExt& p);
    friend bool operator==(const PolyExt& a, const PolyExt& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

  private:
    void trim();

    ExtField field_;
    std::vector<Word> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const PolyExt& p);

struct PolyExtDivRem {
    PolyExt quotient;
    PolyExt remainder;
};

PolyExtDivRem divrem(const PolyExt& a, const PolyExt& b);
PolyExt mod(const PolyExt& a, const PolyExt& b);
/// Monic gcd; gcd(0, 0) throws.
PolyExt gcd(const PolyExt& a, const PolyExt& b);
PolyExt mulmod(const PolyExt& a, const PolyExt& b, const PolyExt& modulus);
PolyExt powmod(const PolyExt& base, const BigInt& e, const PolyExt& modulus);

/// Irreducibility over L with Q = 2^m: lambda^(Q^n) = lambda mod h and
/// gcd(lambda^(Q^(n/p)) - lambda, h) = 1 for every prime p | n.
bool poly_ext_irreducible(const PolyExt& h);

/// N_{L/F2}(h) = prod over k < m of h with coefficients raised to 2^k.
PolyF2 norm_poly(const PolyExt& h);

/// Distinct irreducible factors over L, from the fixed space of the
/// Q-power Frobenius on L[lambda]/(h).
std::size_t count_distinct_irreducible_factors_ext(const PolyExt& h);

}  // namespace tsrkit
