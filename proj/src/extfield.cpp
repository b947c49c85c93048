#include "tsrkit/extfield.hpp"

#include <bit>
#include <ostream>

#include "tsrkit/errors.hpp"

namespace tsrkit {

namespace {

using Word = ExtField::Word;
using u128 = unsigned __int128;

u128 clmul(Word a, Word b) {
    u128 out = 0;
    while (b != 0) {
        out ^= static_cast<u128>(a) << std::countr_zero(b);
        b &= b - 1;
    }
    return out;
}

void require_same_field(const ExtField& a, const ExtField& b) {
    if (!(a == b)) throw InvalidArgument("operands belong to different extension fields");
}

std::vector<unsigned> distinct_prime_divisors(std::size_t n) {
    std::vector<unsigned> out;
    for (unsigned p = 2; std::size_t{p} * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(static_cast<unsigned>(n));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExtField

ExtField::ExtField(const PolyF2& modulus) {
    if (modulus.is_zero() || modulus.deg() == 0) throw InvalidArgument("field modulus must have degree >= 1");
    const std::size_t m = modulus.deg();
    if (m > kMaxDegree) throw InvalidArgument("extension degree above 64 is unsupported");
    if (!is_irreducible(modulus)) throw InvalidArgument("field modulus " + modulus.to_hex() + " is reducible");
    auto impl = std::make_shared<Impl>();
    impl->modulus = modulus;
    impl->m = m;
    impl->low = modulus.limbs()[0] & (m == 64 ? ~Word{0} : (Word{1} << m) - 1);
    impl->order_star = mersenne(static_cast<unsigned>(m));
    impl_ = std::move(impl);
}

ExtElem ExtField::zero() const { return ExtElem(*this, 0); }
ExtElem ExtField::one() const { return ExtElem(*this, 1); }
ExtElem ExtField::alpha() const { return element(PolyF2::monomial(1)); }

ExtElem ExtField::element(const PolyF2& rep) const { return ExtElem(*this, tsrkit::mod(rep, modulus()).to_word()); }

ExtElem ExtField::element_from_word(Word w) const {
    if (impl_->m < 64 && (w >> impl_->m) != 0) throw InvalidArgument("field element is not reduced");
    return ExtElem(*this, w);
}

Word ExtField::mul(Word a, Word b) const {
    const std::size_t m = impl_->m;
    u128 prod = clmul(a, b);
    const u128 full = static_cast<u128>(impl_->low) | (static_cast<u128>(1) << m);
    for (std::size_t i = 2 * m - 1; i-- > m;) {
        if ((prod >> i) & 1) prod ^= full << (i - m);
    }
    if ((prod >> m) & 1) prod ^= full;
    return static_cast<Word>(prod);
}

Word ExtField::pow(Word a, const BigInt& e) const {
    if (e < 0) throw InvalidArgument("negative exponent");
    if (e == 0) return 1;
    if (a == 0) return 0;
    const BigInt reduced = e % impl_->order_star;
    Word result = 1;
    if (reduced == 0) return result;
    for (std::size_t i = boost::multiprecision::msb(reduced) + 1; i-- > 0;) {
        result = mul(result, result);
        if (boost::multiprecision::bit_test(reduced, i)) result = mul(result, a);
    }
    return result;
}

Word ExtField::inv(Word a) const {
    if (a == 0) throw InvalidArgument("inverse of zero field element");
    return pow(a, impl_->order_star - 1);
}

// ---------------------------------------------------------------------------
// ExtElem

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
    require_same_field(a.field_, b.field_);
    return ExtElem(a.field_, a.rep_ ^ b.rep_);
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    require_same_field(a.field_, b.field_);
    return ExtElem(a.field_, a.field_.mul(a.rep_, b.rep_));
}

std::ostream& operator<<(std::ostream& os, const ExtElem& x) { return os << x.rep().to_hex(); }

ExtElem inv(const ExtElem& x) { return ExtElem(x.field(), x.field().inv(x.word())); }
ExtElem pow(const ExtElem& x, const BigInt& e) { return ExtElem(x.field(), x.field().pow(x.word(), e)); }
ExtElem frobenius(const ExtElem& x) { return ExtElem(x.field(), x.field().square(x.word())); }

BigInt element_order(const ExtElem& x, const Factorization& fact) {
    if (x.is_zero()) throw InvalidArgument("zero has no multiplicative order");
    const ExtField& field = x.field();
    if (fact.value() != field.order_star()) {
        throw InvalidArgument("factorization of " + fact.value().str() + " does not match |L*| = " +
                              field.order_star().str());
    }
    BigInt order = fact.value();
    for (const auto& [p, e] : fact.factors()) {
        for (unsigned i = 0; i < e; ++i) {
            if (field.pow(x.word(), order / p) != 1) break;
            order /= p;
        }
    }
    return order;
}

BigInt index_of(const ExtElem& x, const Factorization& fact) { return x.field().order_star() / element_order(x, fact); }

// ---------------------------------------------------------------------------
// PolyExt

PolyExt::PolyExt(ExtField field, std::vector<Word> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    const std::size_t m = field_.degree();
    for (Word c : coeffs_) {
        if (m < 64 && (c >> m) != 0) throw InvalidArgument("polynomial coefficient is not a reduced field element");
    }
    trim();
}

PolyExt::PolyExt(ExtField field, const std::vector<ExtElem>& coeffs) : field_(std::move(field)) {
    coeffs_.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        require_same_field(field_, c.field());
        coeffs_.push_back(c.word());
    }
    trim();
}

PolyExt PolyExt::embed(ExtField field, const PolyF2& p) {
    std::vector<Word> coeffs;
    if (!p.is_zero()) {
        coeffs.resize(p.deg() + 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = p.coeff(i) ? 1 : 0;
    }
    return PolyExt(std::move(field), std::move(coeffs));
}

PolyExt PolyExt::monomial(ExtField field, std::size_t k, Word c) {
    std::vector<Word> coeffs(k + 1, 0);
    coeffs[k] = c;
    return PolyExt(std::move(field), std::move(coeffs));
}

std::size_t PolyExt::deg() const {
    if (coeffs_.empty()) throw InvalidArgument("degree of the zero polynomial");
    return coeffs_.size() - 1;
}

ExtElem PolyExt::coeff(std::size_t i) const { return ExtElem(field_, i < coeffs_.size() ? coeffs_[i] : 0); }

ExtElem PolyExt::leading() const { return ExtElem(field_, coeffs_.at(deg())); }

PolyExt PolyExt::monic() const {
    if (coeffs_.empty() || coeffs_.back() == 1) return *this;
    const Word scale = field_.inv(coeffs_.back());
    PolyExt out = *this;
    for (Word& c : out.coeffs_) c = field_.mul(c, scale);
    return out;
}

PolyExt PolyExt::frobenius_map(std::size_t k) const {
    PolyExt out = *this;
    for (Word& c : out.coeffs_) {
        for (std::size_t i = 0; i < k; ++i) c = field_.square(c);
    }
    return out;
}

void PolyExt::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyExt operator+(const PolyExt& a, const PolyExt& b) {
    require_same_field(a.field_, b.field_);
    std::vector<Word> out = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    const auto& shorter = a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
    for (std::size_t i = 0; i < shorter.size(); ++i) out[i] ^= shorter[i];
    return PolyExt(a.field_, std::move(out));
}

PolyExt operator*(const PolyExt& a, const PolyExt& b) {
    require_same_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return PolyExt(a.field_);
    std::vector<Word> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] ^= a.field_.mul(a.coeffs_[i], b.coeffs_[j]);
    }
    return PolyExt(a.field_, std::move(out));
}

PolyExt operator*(const ExtElem& c, const PolyExt& p) {
    require_same_field(c.field(), p.field_);
    std::vector<Word> out = p.coeffs_;
    for (Word& w : out) w = p.field_.mul(w, c.word());
    return PolyExt(p.field_, std::move(out));
}

std::ostream& operator<<(std::ostream& os, const PolyExt& p) {
    os << '[';
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i > 0) os << ", ";
        os << PolyF2::from_word(p.coeffs()[i]).to_hex();
    }
    return os << ']';
}

PolyExtDivRem divrem(const PolyExt& a, const PolyExt& b) {
    require_same_field(a.field(), b.field());
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    const ExtField& field = a.field();
    const std::size_t db = b.deg();
    const Word lead_inv = field.inv(b.coeffs().back());
    std::vector<Word> rem = a.coeffs();
    std::vector<Word> quot(rem.size() >= db + 1 ? rem.size() - db : 0, 0);
    for (std::size_t i = rem.size(); i-- > db;) {
        if (rem[i] == 0) continue;
        const Word factor = field.mul(rem[i], lead_inv);
        quot[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] ^= field.mul(factor, b.coeffs()[j]);
    }
    rem.resize(std::min(rem.size(), db));
    return {PolyExt(field, std::move(quot)), PolyExt(field, std::move(rem))};
}

PolyExt mod(const PolyExt& a, const PolyExt& b) { return divrem(a, b).remainder; }

PolyExt gcd(const PolyExt& a, const PolyExt& b) {
    if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd(0, 0) is undefined");
    PolyExt x = a, y = b;
    while (!y.is_zero()) {
        PolyExt r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

PolyExt mulmod(const PolyExt& a, const PolyExt& b, const PolyExt& modulus) { return mod(a * b, modulus); }

PolyExt powmod(const PolyExt& base, const BigInt& e, const PolyExt& modulus) {
    if (modulus.is_zero() || modulus.deg() == 0) throw InvalidArgument("powmod modulus must have degree >= 1");
    if (e < 0) throw InvalidArgument("powmod exponent must be nonnegative");
    PolyExt result = PolyExt::monomial(base.field(), 0);
    if (e == 0) return result;
    const PolyExt b = mod(base, modulus);
    for (std::size_t i = boost::multiprecision::msb(e) + 1; i-- > 0;) {
        result = mulmod(result, result, modulus);
        if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, b, modulus);
    }
    return result;
}

bool poly_ext_irreducible(const PolyExt& h) {
    if (h.is_zero() || h.deg() == 0) throw InvalidArgument("irreducibility of a constant polynomial");
    const std::size_t n = h.deg();
    if (n == 1) return true;
    const PolyExt monic = h.monic();
    const ExtField& field = h.field();
    const BigInt q = BigInt(1) << field.degree();
    const PolyExt x = PolyExt::monomial(field, 1);

    // x^(Q^k) mod h for k = 0..n
    std::vector<PolyExt> frob{x};
    for (std::size_t k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), q, monic));
    if (frob[n] != x) return false;
    for (unsigned p : distinct_prime_divisors(n)) {
        if (gcd(frob[n / p] - x, monic).deg() != 0) return false;
    }
    return true;
}

PolyF2 norm_poly(const PolyExt& h) {
    if (h.is_zero()) throw InvalidArgument("norm of the zero polynomial");
    PolyExt product = h;
    PolyExt conjugate = h;
    for (std::size_t k = 1; k < h.field().degree(); ++k) {
        conjugate = conjugate.frobenius_map(1);
        product = product * conjugate;
    }
    PolyF2 out;
    for (std::size_t i = 0; i < product.coeffs().size(); ++i) {
        const Word c = product.coeffs()[i];
        if (c > 1) throw std::logic_error("norm has a coefficient outside F2");
        if (c == 1) out.set_coeff(i, true);
    }
    return out;
}

std::size_t count_distinct_irreducible_factors_ext(const PolyExt& h) {
    if (h.is_zero()) throw InvalidArgument("factor count of the zero polynomial");
    const std::size_t n = h.deg();
    if (n == 0) return 0;
    const ExtField& field = h.field();
    const PolyExt monic = h.monic();
    const PolyExt step = powmod(PolyExt::monomial(field, 1), BigInt(1) << field.degree(), monic);

    // Row i: coefficients of x^(Q i) - x^i mod h.
    std::vector<std::vector<Word>> rows;
    PolyExt frob = PolyExt::monomial(field, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Word> row(n, 0);
        for (std::size_t j = 0; j < frob.coeffs().size(); ++j) row[j] = frob.coeffs()[j];
        row[i] ^= 1;
        rows.push_back(std::move(row));
        frob = mulmod(frob, step, monic);
    }

    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < n; ++c) {
        std::size_t pivot = rank;
        while (pivot < n && rows[pivot][c] == 0) ++pivot;
        if (pivot == n) continue;
        std::swap(rows[rank], rows[pivot]);
        const Word piv_inv = field.inv(rows[rank][c]);
        for (std::size_t r = rank + 1; r < n; ++r) {
            if (rows[r][c] == 0) continue;
            const Word factor = field.mul(rows[r][c], piv_inv);
            for (std::size_t k = c; k < n; ++k) rows[r][k] ^= field.mul(factor, rows[rank][k]);
        }
        ++rank;
    }
    return n - rank;
}

}  // namespace tsrkit
