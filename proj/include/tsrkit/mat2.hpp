#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsrkit/poly2.hpp"

namespace tsrkit {

/// Column vector over F2 of length <= 64; bit c is component c.
struct BitVec {
    std::uint64_t bits = 0;
    std::size_t size = 0;

    friend bool operator==(const BitVec&, const BitVec&) = default;
};

/// Square matrix over F2, dimension 1..64, one word per row:
/// bit c of row r is entry (r, c). Acts on column vectors.
class MatF2 {
  public:
    static constexpr std::size_t kMaxDim = 64;

    explicit MatF2(std::size_t dim);  // zero matrix
    static MatF2 identity(std::size_t dim);
    static MatF2 from_rows(std::vector<std::uint64_t> rows);

    /// Comma-separated hex row words, e.g. "0x2,0x3".
    static MatF2 from_hex_rows(std::string_view text);
    std::string to_hex_rows() const;

    std::size_t dim() const { return rows_.size(); }
    bool at(std::size_t r, std::size_t c) const { return (rows_[r] >> c) & 1; }
    void set(std::size_t r, std::size_t c, bool value);
    std::uint64_t row(std::size_t r) const { return rows_[r]; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }

    MatF2 transposed() const;
    bool is_invertible() const;
    /// Throws InvalidArgument when singular.
    MatF2 inverse() const;

    friend MatF2 operator*(const MatF2& a, const MatF2& b);
    friend bool operator==(const MatF2&, const MatF2&) = default;

  private:
    std::uint64_t mask() const;

    std::vector<std::uint64_t> rows_;
};

std::ostream& operator<<(std::ostream& os, const MatF2& m);

/// Matrix-vector product; throws on length mismatch.
BitVec apply(const MatF2& m, const BitVec& v);

/// Companion matrix of a degree-m polynomial: ones on the superdiagonal and
/// the low coefficients (f_0 .. f_{m-1}) in the bottom row.
MatF2 companion(const PolyF2& f);

/// det(lambda I - M) by reduction to upper Hessenberg form and the
/// determinant recurrence over F2[lambda].
PolyF2 charpoly(const MatF2& m);

/// The nm x nm transition matrix of a TSR step: identity blocks on the block
/// superdiagonal and (a_0 T, ..., a_{n-1} T) as the bottom block row. Word i of
/// the state occupies coordinates [i*m, (i+1)*m).
MatF2 block_tsr_matrix(const MatF2& t, const PolyF2& taps, std::size_t n);

/// Uniform over GL(m, F2) by rejection sampling.
MatF2 random_invertible(std::size_t m, std::mt19937_64& rng);

/// P * M * P^-1; throws when P is singular or the dimensions differ.
MatF2 conjugate(const MatF2& m, const MatF2& p);

/// Low `bits` bits of one engine draw.
std::uint64_t random_bits(std::mt19937_64& rng, std::size_t bits);

}  // namespace tsrkit
