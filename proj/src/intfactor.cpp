#include "tsrkit/intfactor.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tsrkit/errors.hpp"

namespace tsrkit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const BigInt kU64Max = BigInt(std::numeric_limits<u64>::max());

// ---------------------------------------------------------------------------
// Modular helpers, overloaded so the rho/Miller-Rabin templates work on both
// machine words and BigInt.

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }
BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& n) { return a * b % n; }

u64 powmod(u64 base, u64 e, u64 n) {
    u64 result = 1 % n;
    base %= n;
    while (e != 0) {
        if (e & 1) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        e >>= 1;
    }
    return result;
}
BigInt powmod(const BigInt& base, const BigInt& e, const BigInt& n) {
    return boost::multiprecision::powm(base, e, n);
}

u64 addmod(u64 a, u64 b, u64 n) { return static_cast<u64>((static_cast<u128>(a) + b) % n); }
BigInt addmod(const BigInt& a, const BigInt& b, const BigInt& n) { return (a + b) % n; }

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }
BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

u64 absdiff(u64 a, u64 b) { return a > b ? a - b : b - a; }
BigInt absdiff(const BigInt& a, const BigInt& b) { return a > b ? BigInt(a - b) : BigInt(b - a); }

template <typename Int>
bool miller_rabin_round(const Int& n, const Int& base, const Int& d, unsigned s) {
    Int x = powmod(base, d, n);
    const Int n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n_minus_1) return true;
    }
    return false;
}

// The first thirteen primes as bases decide primality for every n < 3.317e24.
constexpr unsigned kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
const BigInt kDeterministicLimit("3317044064679887385961981");

template <typename Int>
bool miller_rabin(const Int& n) {
    if (n < 2) return false;
    for (unsigned p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned p : kWitnesses) {
        if (!miller_rabin_round(n, Int(p), d, s)) return false;
    }
    return true;
}

bool strong_probable_prime_extra(const BigInt& n) {
    // Deterministic pseudo-random bases beyond the proven range.
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 state = 0x9E3779B97F4A7C15ull;
    for (int round = 0; round < 24; ++round) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        BigInt base = BigInt(state) % (n - 3) + 2;
        if (!miller_rabin_round(n, base, d, s)) return false;
    }
    return true;
}

// Brent's variant of Pollard rho with f(x) = x^2 + c. Returns a nontrivial
// factor or 0 when the budget runs out or the cycle closes on n.
template <typename Int>
Int brent_rho(const Int& n, const Int& c, u64 budget) {
    auto f = [&](const Int& x) { return addmod(mulmod(x, x, n), c, n); };
    Int y = 2, x = 2, ys = 2, q = 1, g = 1;
    const u64 block = 128;
    u64 r = 1;
    u64 steps = 0;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            const u64 lim = std::min(block, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod(q, absdiff(x, y), n);
            }
            g = gcd(q, n);
            k += block;
        }
        steps += r;
        r *= 2;
        if (steps > budget && g == 1) return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(absdiff(x, ys), n);
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

constexpr u64 kRhoBudget = u64{1} << 26;
constexpr unsigned kRhoConstants = 24;

BigInt find_factor(const BigInt& n) {
    for (unsigned c = 1; c <= kRhoConstants; ++c) {
        if (n <= kU64Max) {
            u64 g = brent_rho<u64>(n.convert_to<u64>(), c, kRhoBudget);
            if (g != 0) return BigInt(g);
        } else {
            BigInt g = brent_rho<BigInt>(n, BigInt(c), kRhoBudget);
            if (g != 0) return g;
        }
    }
    throw FactoringIncomplete("could not split composite " + n.str());
}

const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        std::vector<bool> composite(kTrialDivisionBound + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= kTrialDivisionBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (u64 j = u64{i} * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

void split_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = find_factor(n);
    split_into(d, out);
    split_into(n / d, out);
}

Factorization from_map(const BigInt& value, const std::map<BigInt, unsigned>& m) {
    std::vector<PrimePower> factors;
    factors.reserve(m.size());
    for (const auto& [p, e] : m) factors.push_back({p, e});
    return Factorization(value, std::move(factors));
}

// Shared memo cache keyed by the factored value.
class FactorCache {
  public:
    bool lookup(const BigInt& v, Factorization& out) const {
        std::lock_guard lock(mu_);
        auto it = map_.find(v);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const Factorization& f) {
        std::lock_guard lock(mu_);
        map_.insert_or_assign(f.value(), f);
    }

  private:
    mutable std::mutex mu_;
    std::map<BigInt, Factorization> map_;
};

FactorCache& cache() {
    static FactorCache c;
    return c;
}

int moebius(unsigned k) {
    int mu = 1;
    for (unsigned p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        k /= p;
        if (k % p == 0) return 0;
        mu = -mu;
    }
    if (k > 1) mu = -mu;
    return mu;
}

// Phi_d(2) = prod over k | d of (2^k - 1)^mu(d/k).
BigInt cyclotomic_at_two(unsigned d) {
    BigInt num = 1, den = 1;
    for (unsigned k = 1; k <= d; ++k) {
        if (d % k != 0) continue;
        int mu = moebius(d / k);
        if (mu == 1) num *= mersenne(k);
        if (mu == -1) den *= mersenne(k);
    }
    return num / den;
}

void skip_spaces(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

BigInt parse_decimal(std::string_view s, std::size_t& i) {
    skip_spaces(s, i);
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("expected a decimal integer in factorization '" + std::string(s) + "'");
    return BigInt(std::string(s.substr(start, i - start)));
}

}  // namespace

Factorization::Factorization(BigInt value, std::vector<PrimePower> factors)
    : value_(std::move(value)), factors_(std::move(factors)) {
    if (value_ < 1) throw InvalidArgument("factorization value must be >= 1");
    BigInt product = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& [p, e] = factors_[i];
        if (e == 0) throw InvalidArgument("factorization exponent must be positive");
        if (i > 0 && !(factors_[i - 1].prime < p)) throw InvalidArgument("factorization primes must be strictly increasing");
        if (!is_probable_prime(p)) throw InvalidArgument("factorization lists non-prime " + p.str());
        product *= boost::multiprecision::pow(p, e);
    }
    if (product != value_) throw InvalidArgument("factorization product does not equal " + value_.str());
}

std::vector<BigInt> Factorization::primes() const {
    std::vector<BigInt> out;
    out.reserve(factors_.size());
    for (const auto& pp : factors_) out.push_back(pp.prime);
    return out;
}

bool Factorization::divisible_by(const BigInt& p) const { return value_ % p == 0; }

std::string Factorization::to_string() const {
    std::ostringstream os;
    os << value_ << " = ";
    if (factors_.empty()) {
        os << "1";
        return os.str();
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i > 0) os << " * ";
        os << factors_[i].prime;
        if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
    }
    return os.str();
}

Factorization Factorization::parse(std::string_view text) {
    std::size_t i = 0;
    BigInt value = parse_decimal(text, i);
    skip_spaces(text, i);
    if (i >= text.size() || text[i] != '=') throw ParseError("expected '=' in factorization '" + std::string(text) + "'");
    ++i;
    std::map<BigInt, unsigned> m;
    for (;;) {
        BigInt p = parse_decimal(text, i);
        unsigned e = 1;
        skip_spaces(text, i);
        if (i < text.size() && text[i] == '^') {
            ++i;
            e = parse_decimal(text, i).convert_to<unsigned>();
            skip_spaces(text, i);
        }
        if (p != 1) m[p] += e;
        if (i >= text.size()) break;
        if (text[i] != '*') throw ParseError("expected '*' in factorization '" + std::string(text) + "'");
        ++i;
    }
    try {
        return from_map(value, m);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= kU64Max) return miller_rabin<u64>(n.convert_to<u64>());
    if (!miller_rabin<BigInt>(n)) return false;
    if (n < kDeterministicLimit) return true;
    return strong_probable_prime_extra(n);
}

Factorization factor(const BigInt& n) {
    if (n == 0) throw InvalidArgument("cannot factor 0");
    Factorization cached;
    if (cache().lookup(n, cached)) return cached;

    std::map<BigInt, unsigned> m;
    BigInt rem = n;
    for (unsigned p : small_primes()) {
        if (BigInt(p) * p > rem) break;
        if (rem > kU64Max) {
            while (rem % p == 0) {
                rem /= p;
                ++m[BigInt(p)];
            }
        } else {
            u64 r = rem.convert_to<u64>();
            while (r % p == 0) {
                r /= p;
                ++m[BigInt(p)];
            }
            rem = r;
        }
    }
    split_into(rem, m);
    return from_map(n, m);
}

Factorization factor_mersenne(unsigned d) {
    const BigInt value = mersenne(d);
    Factorization cached;
    if (cache().lookup(value, cached)) return cached;
    if (d > kMersenneFactoringBound) {
        throw LimitExceeded("2^" + std::to_string(d) + "-1 exceeds the automatic factoring bound (2^" +
                            std::to_string(kMersenneFactoringBound) + "-1); supply a factorization hint");
    }
    std::map<BigInt, unsigned> m;
    for (unsigned k = 1; k <= d; ++k) {
        if (d % k != 0) continue;
        const Factorization part = factor(cyclotomic_at_two(k));
        for (const auto& [p, e] : part.factors()) m[p] += e;
    }
    Factorization f = from_map(value, m);
    cache().store(f);
    return f;
}

void add_known_factorization(const Factorization& f) {
    cache().store(Factorization(f.value(), f.factors()));
}

Rational phi_ratio(const Factorization& fact) {
    Rational r = 1;
    for (const auto& pp : fact.factors()) r *= Rational(pp.prime - 1, pp.prime);
    return r;
}

PrimitivityEstimate primitivity_estimate(unsigned m, unsigned n) {
    if (m == 0 || n == 0) throw InvalidArgument("m and n must be positive");
    const Rational k_ratio = phi_ratio(factor_mersenne(m * n));
    const Rational l_ratio = phi_ratio(factor_mersenne(m));
    PrimitivityEstimate est;
    est.k_ratio = k_ratio.convert_to<double>();
    est.l_ratio = l_ratio.convert_to<double>();
    est.probability = Rational(k_ratio / l_ratio).convert_to<double>();
    return est;
}

double primitivity_prob(unsigned m, unsigned n) { return primitivity_estimate(m, n).probability; }

CoprimeSplit coprime_part(const Factorization& k_fact, const Factorization& l_fact) {
    CoprimeSplit out{1, 1};
    for (const auto& [p, e] : k_fact.factors()) {
        if (l_fact.divisible_by(p)) out.k_l *= boost::multiprecision::pow(p, e);
    }
    out.a = k_fact.value() / out.k_l;
    return out;
}

}  // namespace tsrkit
