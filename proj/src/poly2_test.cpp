#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsrkit/errors.hpp"
#include "tsrkit/intfactor.hpp"
#include "tsrkit/poly2.hpp"

using namespace tsrkit;

namespace {

PolyF2 P(std::uint64_t w) { return PolyF2::from_word(w); }

PolyF2 random_poly(std::mt19937_64& rng, std::size_t max_deg) {
    std::vector<PolyF2::Limb> limbs(max_deg / 64 + 1);
    for (auto& l : limbs) l = rng();
    const std::size_t top = max_deg % 64;
    if (top < 63) limbs.back() &= (std::uint64_t{2} << top) - 1;
    return PolyF2::from_limbs(std::move(limbs));
}

}  // namespace

TEST_CASE("addition") {
    CHECK((P(0x3) + P(0x3)).is_zero());
    CHECK(P(0x5) + P(0x2) == P(0x7));
    CHECK(P(0xa) + P(0x9) == P(0x3));
}

TEST_CASE("multiplication examples") {
    CHECK(P(0x3) * P(0x3) == P(0x5));
    CHECK(oracle::mul(0x3, 0x7) == 0x9);
    CHECK(P(0x3) * P(0x7) == P(0x9));
    CHECK((P(0x1234) * PolyF2::zero()).is_zero());
}

TEST_CASE("multiplication matches schoolbook across limbs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto a = rng() & ((std::uint64_t{1} << (rng() % 32)) - 1);
        const auto b = rng() & ((std::uint64_t{1} << (rng() % 32)) - 1);
        CHECK(P(a) * P(b) == P(oracle::mul(a, b)));
        const auto sa = rng() % 100, sb = rng() % 100;
        CHECK(P(a).shifted(sa) * P(b).shifted(sb) == P(oracle::mul(a, b)).shifted(sa + sb));
    }
}

TEST_CASE("ring axioms, degree <= 64") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const PolyF2 a = random_poly(rng, 64), b = random_poly(rng, 64), c = random_poly(rng, 64);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a.square() == a * a);
    }
}

TEST_CASE("divrem examples") {
    const auto [q1, r1] = divrem(P(0x9), P(0x3));
    CHECK(q1 == P(0x7));
    CHECK(r1.is_zero());
    CHECK(oracle::mul(0x7, 0x3) == 0x9);

    const auto [q2, r2] = divrem(P(0x5), P(0x7));
    CHECK(q2 == P(0x1));
    CHECK(r2 == P(0x2));
    CHECK((oracle::mul(0x1, 0x7) ^ 0x2) == 0x5);

    const auto [q3, r3] = divrem(P(0xbeef), P(0xbeef));
    CHECK(q3.is_one());
    CHECK(r3.is_zero());
    CHECK_THROWS_AS(divrem(P(0x3), PolyF2::zero()), InvalidArgument);
}

TEST_CASE("divrem reconstruction, 1000 pairs") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
        const PolyF2 a = random_poly(rng, 200);
        PolyF2 b = random_poly(rng, 1 + rng() % 130);
        if (b.is_zero()) b = PolyF2::one();
        const auto [q, r] = divrem(a, b);
        CHECK(q * b + r == a);
        CHECK((r.is_zero() || r.deg() < b.deg()));
    }
}

TEST_CASE("gcd examples") {
    CHECK(gcd(P(0x5), P(0x3)) == P(0x3));
    CHECK(gcd(PolyF2::monomial(7), P(0xb5)).is_one());
    CHECK(gcd(P(0x13), PolyF2::zero()) == P(0x13));
    CHECK_THROWS(gcd(PolyF2::zero(), PolyF2::zero()));
}

TEST_CASE("powmod examples") {
    const PolyF2 lambda = PolyF2::monomial(1);
    CHECK(oracle::order_of_lambda(0x13) == 15);
    CHECK(powmod(lambda, 15, P(0x13)).is_one());
    CHECK(oracle::order_of_lambda(0x1f) == 5);
    CHECK(powmod(lambda, 5, P(0x1f)).is_one());
    CHECK(powmod(P(0x1234), 1, P(0x13)) == mod(P(0x1234), P(0x13)));
    CHECK(powmod(P(0x3), 0, P(0x13)).is_one());
    CHECK_THROWS(powmod(lambda, 3, PolyF2::one()));
}

TEST_CASE("powmod with exponents beyond 64 bits") {
    const PolyF2 lambda = PolyF2::monomial(1);
    // Order of lambda mod the primitive lambda^4+lambda+1 is 15.
    const BigInt big = BigInt(15) * (BigInt(1) << 130) + 4;
    CHECK(powmod(lambda, big, P(0x13)) == P(0x10 ^ 0x13));
}

TEST_CASE("is_irreducible examples") {
    CHECK(oracle::is_irreducible(0x7));
    CHECK(is_irreducible(P(0x7)));
    CHECK_FALSE(is_irreducible(P(0x5)));
    CHECK(oracle::is_irreducible(0x13));
    CHECK(is_irreducible(P(0x13)));
    CHECK_THROWS(is_irreducible(PolyF2::one()));
}

TEST_CASE("is_irreducible agrees with trial division for every f of degree <= 10") {
    for (std::uint64_t f = 2; f < (1u << 11); ++f) {
        CAPTURE(f);
        CHECK(is_irreducible(P(f)) == oracle::is_irreducible(f));
    }
}

TEST_CASE("is_primitive examples") {
    const Factorization f15 = factor(15);
    CHECK(oracle::order_of_lambda(0x13) == 15);
    CHECK(is_primitive(P(0x13), f15));
    CHECK(oracle::order_of_lambda(0x1f) == 5);
    CHECK_FALSE(is_primitive(P(0x1f), f15));
    CHECK(is_primitive(P(0x3), factor(1)));
    CHECK_FALSE(is_primitive(P(0x2), factor(1)));
    CHECK_THROWS(is_primitive(P(0x13), factor(255)));
    CHECK_THROWS(is_primitive(P(0x5), factor(3)));
}

TEST_CASE("primitive polynomial counts are phi(2^d - 1)/d for d <= 8") {
    for (unsigned d = 1; d <= 8; ++d) {
        const Factorization fact = factor(mersenne(d));
        std::uint64_t count = 0, oracle_count = 0;
        for (std::uint64_t f = std::uint64_t{1} << d; f < (std::uint64_t{2} << d); ++f) {
            if (!oracle::is_irreducible(f)) continue;
            const bool prim = is_primitive(P(f), fact);
            CHECK(prim == (oracle::order_of_lambda(f) == (std::uint64_t{1} << d) - 1));
            count += prim;
            oracle_count += oracle::order_of_lambda(f) == (std::uint64_t{1} << d) - 1;
        }
        CAPTURE(d);
        CHECK(count == oracle_count);
        CHECK(count == oracle::euler_phi((std::uint64_t{1} << d) - 1) / d);
    }
}

TEST_CASE("multiplicative_order") {
    const PolyF2 lambda = PolyF2::monomial(1);
    CHECK(multiplicative_order(lambda, P(0x1f), factor(15)) == 5);
    CHECK(multiplicative_order(lambda, P(0x13), factor(15)) == 15);
    for (std::uint64_t f = 0x80; f < 0x100; ++f) {
        if (!oracle::is_irreducible(f | 0x100) || (f & 1) == 0) continue;
        CHECK(multiplicative_order(lambda, P(f | 0x100), factor(255)) == oracle::order_of_lambda(f | 0x100));
    }
}

TEST_CASE("homogeneous_compose examples") {
    CHECK(homogeneous_compose(P(0x7), PolyF2::one(), P(0x2)) == P(0x7));
    CHECK(homogeneous_compose(P(0x3), P(0x1d), P(0x66)) == P(0x1d ^ 0x66));
    CHECK((oracle::mul(0x4, 0x4) ^ oracle::mul(0x4, 0x3) ^ oracle::mul(0x3, 0x3)) == 0x19);
    CHECK(homogeneous_compose(P(0x7), P(0x3), P(0x4)) == P(0x19));
    CHECK_THROWS(homogeneous_compose(PolyF2::zero(), P(0x3), P(0x4)));
}

TEST_CASE("homogeneous_compose with g = 1 is plain composition") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const int dq = 1 + static_cast<int>(rng() % 6), df = static_cast<int>(rng() % 9);
        const auto q = oracle::random_poly(dq, rng), f = oracle::random_poly(df, rng);
        CHECK(homogeneous_compose(P(q), PolyF2::one(), P(f)) == P(oracle::compose(q, f)));
    }
}

TEST_CASE("distinct factor count examples") {
    CHECK(count_distinct_irreducible_factors(P(0x5)) == 1);
    CHECK(count_distinct_irreducible_factors(P(0x6)) == 2);
    CHECK(count_distinct_irreducible_factors(P(0x7)) == 1);
    CHECK(count_distinct_irreducible_factors(PolyF2::one()) == 0);
    CHECK_THROWS(count_distinct_irreducible_factors(PolyF2::zero()));
}

TEST_CASE("distinct factor count agrees with trial division for deg <= 8") {
    for (std::uint64_t f = 2; f < (1u << 9); ++f) {
        CAPTURE(f);
        CHECK(count_distinct_irreducible_factors(P(f)) == static_cast<std::size_t>(oracle::distinct_factors(f)));
    }
}

TEST_CASE("count is 1 exactly for powers of an irreducible") {
    const std::uint64_t irreducibles[] = {0x2, 0x3, 0x7, 0xb, 0x13, 0x1f};
    for (auto g : irreducibles) {
        PolyF2 p = P(g);
        for (int e = 1; e <= 5; ++e, p *= P(g)) CHECK(count_distinct_irreducible_factors(p) == 1);
    }
    CHECK(count_distinct_irreducible_factors(P(0x7) * P(0xb)) == 2);
}

TEST_CASE("hex round trip") {
    CHECK(P(0x13).to_hex() == "0x13");
    CHECK(PolyF2::zero().to_hex() == "0x0");
    CHECK(PolyF2::from_hex("13") == P(0x13));
    CHECK(PolyF2::from_hex("0x0") == PolyF2::zero());
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const PolyF2 a = random_poly(rng, 300);
        CHECK(PolyF2::from_hex(a.to_hex()) == a);
    }
    CHECK_THROWS(PolyF2::from_hex("0xg1"));
    CHECK_THROWS(PolyF2::from_hex(""));
}

TEST_CASE("degree of zero is a sentinel") {
    CHECK_FALSE(PolyF2::zero().degree().has_value());
    CHECK_THROWS_AS(PolyF2::zero().deg(), InvalidArgument);
    CHECK(PolyF2::monomial(130).deg() == 130);
}
