#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include <boost/multiprecision/miller_rabin.hpp>

#include "tsrkit/errors.hpp"
#include "tsrkit/intfactor.hpp"

using namespace tsrkit;

namespace {

BigInt product(const Factorization& f) {
    BigInt p = 1;
    for (const auto& pp : f.factors()) p *= boost::multiprecision::pow(pp.prime, pp.exponent);
    return p;
}

bool independent_prime(const BigInt& p) {
    static std::mt19937 gen(12345);
    return boost::multiprecision::miller_rabin_test(p, 40, gen);
}

std::vector<std::pair<std::uint64_t, unsigned>> trial_division(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

TEST_CASE("factor examples") {
    const Factorization f255 = factor(255);
    CHECK(f255.to_string() == "255 = 3 * 5 * 17");
    CHECK(factor(65535).to_string() == "65535 = 3 * 5 * 17 * 257");
    CHECK(factor(1).factors().empty());
    CHECK(factor(4095).to_string() == "4095 = 3^2 * 5 * 7 * 13");
    CHECK_THROWS_AS(factor(0), InvalidArgument);
}

TEST_CASE("factor agrees with trial division below 2^20") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = 1 + rng() % (1u << 20);
        const auto expected = trial_division(n);
        const Factorization got = factor(n);
        REQUIRE(got.factors().size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
            CHECK(got.factors()[k].prime == expected[k].first);
            CHECK(got.factors()[k].exponent == expected[k].second);
        }
    }
}

TEST_CASE("semiprimes with large factors") {
    const BigInt p("1000000007"), q("998244353"), r("10000000019");
    REQUIRE(independent_prime(p));
    REQUIRE(independent_prime(q));
    REQUIRE(independent_prime(r));
    const Factorization two = factor(p * q);
    REQUIRE(two.factors().size() == 2);
    CHECK(two.factors()[0].prime == q);
    CHECK(two.factors()[1].prime == p);
    const Factorization three = factor(p * q * r * r);
    CHECK(three.to_string() == BigInt(p * q * r * r).str() + " = 998244353 * 1000000007 * 10000000019^2");
}

TEST_CASE("factor_mersenne: reconstruction and independent primality, d <= 96") {
    for (unsigned d = 1; d <= 96; ++d) {
        CAPTURE(d);
        const Factorization f = factor_mersenne(d);
        CHECK(f.value() == mersenne(d));
        CHECK(product(f) == mersenne(d));
        for (std::size_t k = 0; k < f.factors().size(); ++k) {
            CHECK(independent_prime(f.factors()[k].prime));
            if (k > 0) CHECK(f.factors()[k - 1].prime < f.factors()[k].prime);
        }
    }
    CHECK(factor_mersenne(56).to_string() ==
          "72057594037927935 = 3 * 5 * 17 * 29 * 43 * 113 * 127 * 15790321");
    CHECK(factor_mersenne(64).to_string() == "18446744073709551615 = 3 * 5 * 17 * 257 * 641 * 65537 * 6700417");
}

TEST_CASE("factor_mersenne beyond the bound needs a hint") {
    CHECK_THROWS_AS(factor_mersenne(128), LimitExceeded);
    const Factorization hint = Factorization::parse(
        "340282366920938463463374607431768211455 = 3 * 5 * 17 * 257 * 641 * 65537 * 274177 * 6700417 * "
        "67280421310721");
    add_known_factorization(hint);
    CHECK(factor_mersenne(128) == hint);
    CHECK_THROWS(Factorization::parse("16 = 3 * 5"));
}

TEST_CASE("concurrent lookups agree") {
    std::vector<std::thread> threads;
    std::vector<std::string> results(4);
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&results, t] { results[t] = factor_mersenne(90 + t).to_string(); });
    }
    for (auto& th : threads) th.join();
    for (int t = 0; t < 4; ++t) CHECK(results[t] == factor_mersenne(90 + t).to_string());
}

TEST_CASE("Factorization validation and text round trip") {
    CHECK_THROWS(Factorization(15, {{3, 1}}));
    CHECK_THROWS(Factorization(15, {{5, 1}, {3, 1}}));
    CHECK_THROWS(Factorization(16, {{4, 2}}));
    CHECK(Factorization::parse("1 = 1") == Factorization());
    CHECK(Factorization().to_string() == "1 = 1");
    const Factorization f = factor_mersenne(72);
    CHECK(Factorization::parse(f.to_string()) == f);
    CHECK(Factorization::parse(" 12 = 2^2*3 ").to_string() == "12 = 2^2 * 3");
    CHECK_THROWS(Factorization::parse("12 = 2 * 3"));
    CHECK_THROWS(Factorization::parse("12 - 2^2 * 3"));
    CHECK_THROWS(Factorization::parse("12 = 2^x * 3"));
}

TEST_CASE("is_probable_prime against the independent test") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 3000; ++i) {
        const BigInt n = BigInt(rng()) * (i % 3 == 0 ? BigInt(rng()) : BigInt(1)) + 1;
        CHECK(is_probable_prime(n) == independent_prime(n));
    }
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_probable_prime(BigInt("3215031751")));
    CHECK_FALSE(is_probable_prime(BigInt("3825123056546413051")));
    CHECK_FALSE(is_probable_prime(BigInt("318665857834031151167461")));
    CHECK(is_probable_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST_CASE("phi_ratio") {
    CHECK(phi_ratio(factor(255)) == Rational(128, 255));
    CHECK(std::abs(static_cast<double>(phi_ratio(factor(255))) - 0.502) < 0.001);
    CHECK(std::abs(static_cast<double>(phi_ratio(factor_mersenne(56))) - 0.465) < 0.001);
    CHECK(phi_ratio(Factorization()) == 1);
}

TEST_CASE("primitivity_prob(m, 1) = 1") {
    for (unsigned m = 1; m <= 64; ++m) CHECK(primitivity_prob(m, 1) == 1.0);
}

TEST_CASE("coprime_part") {
    const CoprimeSplit s = coprime_part(factor(15), factor(3));
    CHECK(s.k_l == 3);
    CHECK(s.a == 5);
    const CoprimeSplit one = coprime_part(factor(4095), Factorization());
    CHECK(one.k_l == 1);
    CHECK(one.a == 4095);
    const CoprimeSplit same = coprime_part(factor(255), factor(255));
    CHECK(same.k_l == 255);
    CHECK(same.a == 1);
    for (unsigned m = 1; m <= 12; ++m) {
        for (unsigned n = 1; m * n <= 96; ++n) {
            const Factorization k = factor_mersenne(m * n), l = factor_mersenne(m);
            const CoprimeSplit c = coprime_part(k, l);
            CHECK(c.k_l * c.a == k.value());
            CHECK(boost::multiprecision::gcd(c.a, l.value()) == 1);
        }
    }
}
