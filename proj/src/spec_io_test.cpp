#include <doctest.h>

#include <random>

#include "tsrkit/errors.hpp"
#include "tsrkit/tsr.hpp"

using namespace tsrkit;

TEST_CASE("parse a hand-written spec") {
    const TsrSpec spec = parse_spec("# example\nm=2\nn=2\n\nT=0x2,0x3\nS=0x3\nQ=0x19\n");
    CHECK(spec.m() == 2);
    CHECK(spec.n() == 2);
    CHECK(spec.t() == companion(PolyF2::from_word(0x7)));
    CHECK(spec.taps() == PolyF2::from_word(0x3));
}

TEST_CASE("companion form") {
    const TsrSpec spec = parse_spec("m=4\nn=3\nT=companion:0x13\nS=0x5\n");
    CHECK(spec.t() == companion(PolyF2::from_word(0x13)));
    CHECK_THROWS_AS(parse_spec("m=4\nn=3\nT=companion:0x7\nS=0x5\n"), ParseError);
}

TEST_CASE("format and parse round trip") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const std::size_t m = 1 + rng() % 64, n = 1 + rng() % 12;
        std::vector<std::uint64_t> rows(m);
        for (auto& r : rows) r = random_bits(rng, m);
        const TsrSpec spec(m, n, MatF2::from_rows(rows), PolyF2::from_word(random_bits(rng, n)));
        const std::string text = format_spec(spec);
        CHECK(parse_spec(text) == spec);
        CHECK(format_spec(parse_spec(text)) == text);
        CHECK(parse_spec_file(format_spec(spec, false)).recorded_q == std::nullopt);
    }
}

TEST_CASE("malformed spec files") {
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\nS=0x3\nQ=0x1f\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\nS=0x3\nX=1\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nm=2\nn=2\nT=0x2,0x3\nS=0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2\nS=0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\nS=0x4\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=0\nn=2\nT=0x2,0x3\nS=0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=65\nn=2\nT=0x2,0x3\nS=0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=two\nT=0x2,0x3\nS=0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\nS 0x3\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("m=2\nn=2\nT=0x2,0x3\nS=0xz\n"), ParseError);
}

TEST_CASE("a_0 = 0 still parses; it is rejected as a candidate later") {
    const TsrSpec spec = parse_spec("m=2\nn=2\nT=0x2,0x3\nS=0x2\n");
    CHECK_THROWS_AS(candidate_irreducible(spec), NotACandidate);
}
