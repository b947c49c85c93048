#include "tsrkit/mat2.hpp"

#include <bit>
#include <ostream>
#include <sstream>

#include "tsrkit/errors.hpp"

namespace tsrkit {

namespace {

std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > MatF2::kMaxDim) {
        throw InvalidArgument("matrix dimension " + std::to_string(dim) + " outside 1..64");
    }
}

void swap_columns(std::vector<std::uint64_t>& rows, std::size_t a, std::size_t b) {
    for (auto& r : rows) {
        const std::uint64_t diff = ((r >> a) ^ (r >> b)) & 1;
        r ^= (diff << a) | (diff << b);
    }
}

// Row echelon rank; destroys its argument.
std::size_t rank_of(std::vector<std::uint64_t> rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !((rows[pivot] >> c) & 1)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if ((rows[r] >> c) & 1) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

MatF2::MatF2(std::size_t dim) {
    check_dim(dim);
    rows_.assign(dim, 0);
}

MatF2 MatF2::identity(std::size_t dim) {
    MatF2 m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.rows_[i] = std::uint64_t{1} << i;
    return m;
}

MatF2 MatF2::from_rows(std::vector<std::uint64_t> rows) {
    MatF2 m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] & ~m.mask()) {
            throw InvalidArgument("row " + std::to_string(r) + " has bits beyond column " + std::to_string(rows.size()));
        }
    }
    m.rows_ = std::move(rows);
    return m;
}

MatF2 MatF2::from_hex_rows(std::string_view text) {
    std::vector<std::uint64_t> rows;
    while (true) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        const PolyF2 row = PolyF2::from_hex(item);
        if (row.degree().value_or(0) >= 64) throw ParseError("matrix row " + std::string(item) + " exceeds 64 bits");
        rows.push_back(row.to_word());
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    try {
        return from_rows(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string MatF2::to_hex_rows() const {
    std::string out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r > 0) out += ',';
        out += PolyF2::from_word(rows_[r]).to_hex();
    }
    return out;
}

void MatF2::set(std::size_t r, std::size_t c, bool value) {
    if (r >= dim() || c >= dim()) throw InvalidArgument("matrix index out of range");
    const std::uint64_t bit = std::uint64_t{1} << c;
    rows_[r] = value ? (rows_[r] | bit) : (rows_[r] & ~bit);
}

std::uint64_t MatF2::mask() const { return low_mask(dim()); }

MatF2 MatF2::transposed() const {
    MatF2 t(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            if (at(r, c)) t.rows_[c] |= std::uint64_t{1} << r;
        }
    }
    return t;
}

bool MatF2::is_invertible() const { return rank_of(rows_, dim()) == dim(); }

MatF2 MatF2::inverse() const {
    const std::size_t n = dim();
    std::vector<std::uint64_t> a = rows_;
    std::vector<std::uint64_t> inv = identity(n).rows_;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && !((a[pivot] >> c) & 1)) ++pivot;
        if (pivot == n) throw InvalidArgument("matrix is singular");
        std::swap(a[c], a[pivot]);
        std::swap(inv[c], inv[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && ((a[r] >> c) & 1)) {
                a[r] ^= a[c];
                inv[r] ^= inv[c];
            }
        }
    }
    MatF2 out(n);
    out.rows_ = std::move(inv);
    return out;
}

MatF2 operator*(const MatF2& a, const MatF2& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("matrix product dimension mismatch");
    MatF2 out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        std::uint64_t bits = a.rows_[r];
        std::uint64_t acc = 0;
        while (bits != 0) {
            acc ^= b.rows_[static_cast<std::size_t>(std::countr_zero(bits))];
            bits &= bits - 1;
        }
        out.rows_[r] = acc;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const MatF2& m) { return os << '[' << m.to_hex_rows() << ']'; }

BitVec apply(const MatF2& m, const BitVec& v) {
    if (v.size != m.dim()) {
        throw InvalidArgument("vector length " + std::to_string(v.size) + " does not match matrix dimension " +
                              std::to_string(m.dim()));
    }
    BitVec out{0, m.dim()};
    for (std::size_t r = 0; r < m.dim(); ++r) {
        out.bits |= static_cast<std::uint64_t>(std::popcount(m.row(r) & v.bits) & 1) << r;
    }
    return out;
}

MatF2 companion(const PolyF2& f) {
    if (f.is_zero() || f.deg() == 0) throw InvalidArgument("companion matrix of a constant polynomial");
    const std::size_t m = f.deg();
    check_dim(m);
    std::vector<std::uint64_t> rows(m, 0);
    for (std::size_t r = 0; r + 1 < m; ++r) rows[r] = std::uint64_t{1} << (r + 1);
    rows[m - 1] = f.limbs()[0] & low_mask(m);
    return MatF2::from_rows(std::move(rows));
}

PolyF2 charpoly(const MatF2& m) {
    const std::size_t n = m.dim();
    std::vector<std::uint64_t> h = m.rows();

    // Similarity transforms to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t pivot = j + 1;
        while (pivot < n && !((h[pivot] >> j) & 1)) ++pivot;
        if (pivot == n) continue;
        if (pivot != j + 1) {
            std::swap(h[pivot], h[j + 1]);
            swap_columns(h, pivot, j + 1);
        }
        for (std::size_t k = j + 2; k < n; ++k) {
            if (!((h[k] >> j) & 1)) continue;
            // row_k += row_{j+1}, then col_{j+1} += col_k to undo it on the right.
            h[k] ^= h[j + 1];
            for (auto& row : h) row ^= ((row >> k) & 1) << (j + 1);
        }
    }
    auto entry = [&](std::size_t r, std::size_t c) { return ((h[r] >> c) & 1) != 0; };

    // p_k = (lambda + h_kk) p_{k-1} + sum_i h_ik (prod of subdiagonal h_{j,j-1}) p_{i-1}
    std::vector<PolyF2> p(n + 1);
    p[0] = PolyF2::one();
    const PolyF2 lambda = PolyF2::monomial(1);
    for (std::size_t k = 1; k <= n; ++k) {
        PolyF2 next = p[k - 1] * (entry(k - 1, k - 1) ? lambda + PolyF2::one() : lambda);
        bool sub_product = true;
        for (std::size_t i = k - 1; i >= 1; --i) {
            sub_product = sub_product && entry(i, i - 1);
            if (!sub_product) break;
            if (entry(i - 1, k - 1)) next += p[i - 1];
        }
        p[k] = std::move(next);
    }
    return p[n];
}

MatF2 block_tsr_matrix(const MatF2& t, const PolyF2& taps, std::size_t n) {
    if (n == 0) throw InvalidArgument("a TSR needs at least one word");
    if (!taps.is_zero() && taps.deg() >= n) throw InvalidArgument("tap polynomial degree must be below n");
    const std::size_t m = t.dim();
    if (n * m > MatF2::kMaxDim) throw InvalidArgument("block matrix larger than 64x64 is unsupported");
    std::vector<std::uint64_t> rows(n * m, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t r = 0; r < m; ++r) rows[i * m + r] = std::uint64_t{1} << ((i + 1) * m + r);
    }
    for (std::size_t r = 0; r < m; ++r) {
        std::uint64_t row = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (taps.coeff(j)) row |= t.row(r) << (j * m);
        }
        rows[(n - 1) * m + r] = row;
    }
    return MatF2::from_rows(std::move(rows));
}

std::uint64_t random_bits(std::mt19937_64& rng, std::size_t bits) { return rng() & low_mask(bits); }

MatF2 random_invertible(std::size_t m, std::mt19937_64& rng) {
    check_dim(m);
    for (;;) {
        std::vector<std::uint64_t> rows(m);
        for (auto& r : rows) r = random_bits(rng, m);
        MatF2 candidate = MatF2::from_rows(std::move(rows));
        if (candidate.is_invertible()) return candidate;
    }
}

MatF2 conjugate(const MatF2& m, const MatF2& p) {
    if (m.dim() != p.dim()) throw InvalidArgument("conjugation dimension mismatch");
    return p * m * p.inverse();
}

}  // namespace tsrkit
