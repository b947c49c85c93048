// Brute-force reference implementations used only by the tests. They work on
// polynomials packed into a single word and share no code with the library.
#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline int deg(u64 p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

/// Schoolbook product; caller keeps deg a + deg b < 64.
inline u64 mul(u64 a, u64 b) {
    u64 out = 0;
    for (int i = 0; i < 64; ++i) {
        if (!((a >> i) & 1)) continue;
        for (int j = 0; i + j < 64; ++j) {
            if ((b >> j) & 1) out ^= u64{1} << (i + j);
        }
    }
    return out;
}

inline u64 rem(u64 a, u64 b) {
    const int db = deg(b);
    for (int i = deg(a); i >= db; --i) {
        if ((a >> i) & 1) a ^= b << (i - db);
    }
    return a;
}

inline u64 quot(u64 a, u64 b) {
    const int db = deg(b);
    u64 q = 0;
    for (int i = deg(a); i >= db; --i) {
        if ((a >> i) & 1) {
            a ^= b << (i - db);
            q |= u64{1} << (i - db);
        }
    }
    return q;
}

/// Trial division by every polynomial of degree 1..deg(f)/2.
inline bool is_irreducible(u64 f) {
    const int d = deg(f);
    if (d < 1) return false;
    for (u64 g = 2; deg(g) <= d / 2; ++g) {
        if (rem(f, g) == 0) return false;
    }
    return true;
}

/// Order of lambda modulo f by repeated multiplication; 0 when f(0) = 0.
inline u64 order_of_lambda(u64 f) {
    if ((f & 1) == 0) return 0;
    const u64 one = rem(1, f);
    u64 x = rem(2, f);
    u64 k = 1;
    while (x != one) {
        x = rem(x << 1, f);
        ++k;
    }
    return k;
}

/// q(f) = sum q_i f^i.
inline u64 compose(u64 q, u64 f) {
    u64 out = 0, pw = 1;
    for (int i = 0; i <= deg(q); ++i) {
        if ((q >> i) & 1) out ^= pw;
        pw = mul(pw, f);
    }
    return out;
}

/// Distinct irreducible factors by trial division.
inline int distinct_factors(u64 f) {
    int count = 0;
    for (u64 g = 2; deg(f) >= 1; ++g) {
        if (deg(g) > deg(f)) break;
        if (!is_irreducible(g) || rem(f, g) != 0) continue;
        ++count;
        while (deg(f) >= 1 && rem(f, g) == 0) f = quot(f, g);
    }
    return count;
}

inline u64 euler_phi(u64 n) {
    u64 count = 0;
    for (u64 k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) ++count;
    }
    return count;
}

/// det(lambda I - M) by permutation expansion; rows packed as words, dim <= 8.
inline u64 charpoly(const std::vector<u64>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    u64 total = 0;
    do {
        u64 term = 1;
        for (int i = 0; i < n && term != 0; ++i) {
            u64 entry = (rows[i] >> perm[i]) & 1;  // (lambda I - M)[i][perm i] = [i == perm i] lambda + M
            if (perm[i] == i) entry ^= 2;
            term = mul(term, entry);
        }
        total ^= term;  // signs vanish in characteristic 2
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Random polynomial of exact degree d (bit d set).
inline u64 random_poly(int d, std::mt19937_64& rng) {
    const u64 low = d == 0 ? 0 : rng() & ((u64{1} << d) - 1);
    return (u64{1} << d) | low;
}

}  // namespace oracle
