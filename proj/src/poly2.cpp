#include "tsrkit/poly2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <ostream>

#include "tsrkit/errors.hpp"

namespace tsrkit {

namespace {

using Limb = PolyF2::Limb;
constexpr std::size_t kBits = PolyF2::kLimbBits;

// Carry-less 64x64 -> 128 product.
void clmul(Limb a, Limb b, Limb& lo, Limb& hi) {
    lo = 0;
    hi = 0;
    while (b != 0) {
        const int i = std::countr_zero(b);
        lo ^= a << i;
        if (i != 0) hi ^= a >> (kBits - i);
        b &= b - 1;
    }
}

// Interleave zeros between the 32 low bits of x.
Limb spread32(Limb x) {
    x &= 0xFFFFFFFFull;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
}

// dst ^= src * lambda^shift, growing dst as needed.
void xor_shifted(std::vector<Limb>& dst, std::span<const Limb> src, std::size_t shift) {
    const std::size_t limb_shift = shift / kBits;
    const unsigned bit_shift = shift % kBits;
    const std::size_t need = src.size() + limb_shift + (bit_shift ? 1 : 0);
    if (dst.size() < need) dst.resize(need, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i + limb_shift] ^= src[i] << bit_shift;
        if (bit_shift) dst[i + limb_shift + 1] ^= src[i] >> (kBits - bit_shift);
    }
}

std::size_t degree_of(const std::vector<Limb>& limbs) {
    return (limbs.size() - 1) * kBits + (kBits - 1 - std::countl_zero(limbs.back()));
}

void trim_limbs(std::vector<Limb>& limbs) {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

std::vector<unsigned> distinct_prime_divisors(std::size_t d) {
    std::vector<unsigned> out;
    for (unsigned p = 2; std::size_t{p} * p <= d; ++p) {
        if (d % p != 0) continue;
        out.push_back(p);
        while (d % p == 0) d /= p;
    }
    if (d > 1) out.push_back(static_cast<unsigned>(d));
    return out;
}

}  // namespace

PolyF2 PolyF2::from_word(std::uint64_t bits) {
    PolyF2 p;
    if (bits != 0) p.limbs_.push_back(bits);
    return p;
}

PolyF2 PolyF2::from_limbs(std::vector<Limb> limbs) {
    PolyF2 p;
    p.limbs_ = std::move(limbs);
    p.trim();
    return p;
}

PolyF2 PolyF2::monomial(std::size_t k) {
    PolyF2 p;
    p.limbs_.assign(k / kBits + 1, 0);
    p.limbs_.back() = Limb{1} << (k % kBits);
    return p;
}

PolyF2 PolyF2::from_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty()) throw ParseError("empty hex polynomial");
    std::vector<Limb> limbs((text.size() * 4 + kBits - 1) / kBits, 0);
    std::size_t bit = 0;
    for (auto it = text.rbegin(); it != text.rend(); ++it, bit += 4) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
        Limb nibble;
        if (c >= '0' && c <= '9') {
            nibble = static_cast<Limb>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            nibble = static_cast<Limb>(c - 'a' + 10);
        } else {
            throw ParseError("invalid hex digit '" + std::string(1, *it) + "' in polynomial");
        }
        limbs[bit / kBits] |= nibble << (bit % kBits);
    }
    return from_limbs(std::move(limbs));
}

std::string PolyF2::to_hex() const {
    if (is_zero()) return "0x0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string digits;
    const std::size_t nibbles = deg() / 4 + 1;
    for (std::size_t i = 0; i < nibbles; ++i) {
        const std::size_t bit = i * 4;
        digits.push_back(kDigits[(limbs_[bit / kBits] >> (bit % kBits)) & 0xF]);
    }
    std::reverse(digits.begin(), digits.end());
    return "0x" + digits;
}

std::optional<std::size_t> PolyF2::degree() const {
    if (is_zero()) return std::nullopt;
    return degree_of(limbs_);
}

std::size_t PolyF2::deg() const {
    if (is_zero()) throw InvalidArgument("degree of the zero polynomial");
    return degree_of(limbs_);
}

bool PolyF2::coeff(std::size_t i) const {
    const std::size_t li = i / kBits;
    return li < limbs_.size() && ((limbs_[li] >> (i % kBits)) & 1);
}

void PolyF2::set_coeff(std::size_t i, bool value) {
    const std::size_t li = i / kBits;
    if (value) {
        if (li >= limbs_.size()) limbs_.resize(li + 1, 0);
        limbs_[li] |= Limb{1} << (i % kBits);
    } else if (li < limbs_.size()) {
        limbs_[li] &= ~(Limb{1} << (i % kBits));
        trim();
    }
}

std::uint64_t PolyF2::to_word() const {
    if (limbs_.size() > 1) throw InvalidArgument("polynomial " + to_hex() + " does not fit in a 64-bit word");
    return limbs_.empty() ? 0 : limbs_[0];
}

PolyF2 PolyF2::shifted(std::size_t k) const {
    PolyF2 out;
    xor_shifted(out.limbs_, limbs_, k);
    out.trim();
    return out;
}

PolyF2 PolyF2::square() const {
    PolyF2 out;
    out.limbs_.resize(limbs_.size() * 2);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        out.limbs_[2 * i] = spread32(limbs_[i]);
        out.limbs_[2 * i + 1] = spread32(limbs_[i] >> 32);
    }
    out.trim();
    return out;
}

PolyF2& PolyF2::operator+=(const PolyF2& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < rhs.limbs_.size(); ++i) limbs_[i] ^= rhs.limbs_[i];
    trim();
    return *this;
}

PolyF2 operator*(const PolyF2& lhs, const PolyF2& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Limb> out(lhs.limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < lhs.limbs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            Limb lo, hi;
            clmul(lhs.limbs_[i], rhs.limbs_[j], lo, hi);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
    return PolyF2::from_limbs(std::move(out));
}

void PolyF2::trim() { trim_limbs(limbs_); }

std::ostream& operator<<(std::ostream& os, const PolyF2& p) { return os << p.to_hex(); }

PolyDivRem divrem(const PolyF2& a, const PolyF2& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    const std::size_t db = b.deg();
    std::vector<Limb> rem(a.limbs().begin(), a.limbs().end());
    std::vector<Limb> quot;
    while (!rem.empty()) {
        const std::size_t dr = degree_of(rem);
        if (dr < db) break;
        const std::size_t shift = dr - db;
        if (quot.size() <= shift / kBits) quot.resize(shift / kBits + 1, 0);
        quot[shift / kBits] |= Limb{1} << (shift % kBits);
        xor_shifted(rem, b.limbs(), shift);
        trim_limbs(rem);
    }
    return {PolyF2::from_limbs(std::move(quot)), PolyF2::from_limbs(std::move(rem))};
}

PolyF2 mod(const PolyF2& a, const PolyF2& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    const std::size_t db = b.deg();
    std::vector<Limb> rem(a.limbs().begin(), a.limbs().end());
    while (!rem.empty()) {
        const std::size_t dr = degree_of(rem);
        if (dr < db) break;
        xor_shifted(rem, b.limbs(), dr - db);
        trim_limbs(rem);
    }
    return PolyF2::from_limbs(std::move(rem));
}

PolyF2 gcd(const PolyF2& a, const PolyF2& b) {
    if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd(0, 0) is undefined");
    PolyF2 x = a, y = b;
    while (!y.is_zero()) {
        PolyF2 r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x;  // every nonzero polynomial over F2 is monic
}

PolyF2 mulmod(const PolyF2& a, const PolyF2& b, const PolyF2& modulus) { return mod(a * b, modulus); }

PolyF2 powmod(const PolyF2& base, const BigInt& e, const PolyF2& modulus) {
    if (modulus.is_zero() || modulus.deg() == 0) throw InvalidArgument("powmod modulus must have degree >= 1");
    if (e < 0) throw InvalidArgument("powmod exponent must be nonnegative");
    PolyF2 result = PolyF2::one();
    if (e == 0) return result;
    const PolyF2 b = mod(base, modulus);
    for (std::size_t i = boost::multiprecision::msb(e) + 1; i-- > 0;) {
        result = mod(result.square(), modulus);
        if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, b, modulus);
    }
    return result;
}

bool is_irreducible(const PolyF2& f) {
    if (f.is_zero() || f.deg() == 0) throw InvalidArgument("irreducibility of a constant polynomial");
    const std::size_t d = f.deg();
    if (d == 1) return true;
    if (!f.coeff(0)) return false;

    const PolyF2 x = PolyF2::monomial(1);
    const std::vector<unsigned> primes = distinct_prime_divisors(d);
    std::map<std::size_t, PolyF2> wanted;  // k -> x^(2^k) mod f
    for (unsigned p : primes) wanted[d / p];
    wanted[d];

    PolyF2 power = x;
    for (std::size_t k = 1; k <= d; ++k) {
        power = mod(power.square(), f);
        if (auto it = wanted.find(k); it != wanted.end()) it->second = power;
    }
    if (wanted[d] != x) return false;
    for (unsigned p : primes) {
        if (!gcd(wanted[d / p] + x, f).is_one()) return false;
    }
    return true;
}

bool is_primitive(const PolyF2& f, const Factorization& fact) {
    if (!is_irreducible(f)) throw InvalidArgument("is_primitive requires an irreducible polynomial, got " + f.to_hex());
    const std::size_t d = f.deg();
    const BigInt order = mersenne(static_cast<unsigned>(d));
    if (fact.value() != order) {
        throw InvalidArgument("factorization of " + fact.value().str() + " supplied, expected 2^" + std::to_string(d) +
                              "-1");
    }
    const PolyF2 x = PolyF2::monomial(1);
    if (f == x) return false;  // lambda is zero in F2[lambda]/(lambda)
    for (const auto& pp : fact.factors()) {
        if (powmod(x, order / pp.prime, f).is_one()) return false;
    }
    return true;
}

BigInt multiplicative_order(const PolyF2& base, const PolyF2& modulus, const Factorization& group_order) {
    if (!powmod(base, group_order.value(), modulus).is_one()) {
        throw InvalidArgument("element order does not divide " + group_order.value().str());
    }
    BigInt order = group_order.value();
    for (const auto& [p, e] : group_order.factors()) {
        for (unsigned i = 0; i < e; ++i) {
            if (!powmod(base, order / p, modulus).is_one()) break;
            order /= p;
        }
    }
    return order;
}

PolyF2 homogeneous_compose(const PolyF2& q, const PolyF2& g, const PolyF2& f) {
    if (q.is_zero()) throw InvalidArgument("homogeneous_compose needs a nonzero q");
    const std::size_t m = q.deg();
    std::vector<PolyF2> g_pows(m + 1);
    g_pows[0] = PolyF2::one();
    for (std::size_t i = 1; i <= m; ++i) g_pows[i] = g_pows[i - 1] * g;

    PolyF2 result;
    PolyF2 f_pow = PolyF2::one();
    for (std::size_t i = 0; i <= m; ++i) {
        if (q.coeff(i)) result += f_pow * g_pows[m - i];
        if (i < m) f_pow *= f;
    }
    return result;
}

std::size_t count_distinct_irreducible_factors(const PolyF2& f) {
    if (f.is_zero()) throw InvalidArgument("factor count of the zero polynomial");
    const std::size_t d = f.deg();
    if (d == 0) return 0;

    // Rows lambda^(2i) - lambda^i mod f span the image of Frobenius - identity;
    // the fixed space has dimension d - rank.
    const PolyF2 step = mod(PolyF2::monomial(2), f);
    std::map<std::size_t, PolyF2> basis;  // leading degree -> reduced row
    PolyF2 frob = PolyF2::one();
    for (std::size_t i = 0; i < d; ++i) {
        PolyF2 row = frob + PolyF2::monomial(i);
        while (!row.is_zero()) {
            auto it = basis.find(row.deg());
            if (it == basis.end()) {
                basis.emplace(row.deg(), row);
                break;
            }
            row += it->second;
        }
        frob = mulmod(frob, step, f);
    }
    return d - basis.size();
}

}  // namespace tsrkit
