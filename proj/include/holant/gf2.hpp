#pragma once

// Small linear algebra over GF(2). Rows are bit masks over variable bits as
// laid out by var_bit; `rhs` is the constant term.

#include <cstdint>
#include <optional>
#include <vector>

namespace holant::gf2 {

struct Row {
    std::uint32_t mask = 0;
    bool rhs = false;
};

// Reduced row echelon form with pivots taken from the most significant bit
// down (x1 first). Returns the pivot bit of each surviving row; rows of the
// form 0 = 1 are kept (pivot 0) so that callers can detect inconsistency.
struct Echelon {
    std::vector<Row> rows;
    std::vector<std::uint32_t> pivots;
    bool consistent = true;
};

inline std::uint32_t high_bit(std::uint32_t m) { return m ? std::uint32_t{1} << (31 - __builtin_clz(m)) : 0; }

inline Echelon reduce(std::vector<Row> rows) {
    Echelon e;
    for (Row r : rows) {
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (r.mask & e.pivots[k]) {
                r.mask ^= e.rows[k].mask;
                r.rhs ^= e.rows[k].rhs;
            }
        if (!r.mask) {
            if (r.rhs) e.consistent = false;
            continue;
        }
        std::uint32_t p = high_bit(r.mask);
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (e.rows[k].mask & p) {
                e.rows[k].mask ^= r.mask;
                e.rows[k].rhs ^= r.rhs;
            }
        e.rows.push_back(r);
        e.pivots.push_back(p);
    }
    return e;
}

// Dense rows for systems over more than 32 variables.
struct DenseRow {
    std::vector<std::uint64_t> bits;
    bool rhs = false;

    explicit DenseRow(int n = 0) : bits(static_cast<std::size_t>((n + 63) / 64), 0) {}
    bool get(int i) const { return (bits[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u; }
    void flip(int i) { bits[static_cast<std::size_t>(i / 64)] ^= std::uint64_t{1} << (i % 64); }
    void add(const DenseRow& o) {
        for (std::size_t k = 0; k < bits.size(); ++k) bits[k] ^= o.bits[k];
        rhs ^= o.rhs;
    }
    int lowest() const {
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (bits[k]) return static_cast<int>(k * 64) + __builtin_ctzll(bits[k]);
        return -1;
    }
};

// Reduced echelon form with the lowest-index variable of each row as pivot.
struct DenseEchelon {
    std::vector<DenseRow> rows;
    std::vector<int> pivots;
    bool consistent = true;
};

inline DenseEchelon reduce(std::vector<DenseRow> rows) {
    DenseEchelon e;
    for (DenseRow& r : rows) {
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (r.get(e.pivots[k])) r.add(e.rows[k]);
        int p = r.lowest();
        if (p < 0) {
            if (r.rhs) e.consistent = false;
            continue;
        }
        for (auto& q : e.rows)
            if (q.get(p)) q.add(r);
        e.rows.push_back(std::move(r));
        e.pivots.push_back(p);
    }
    return e;
}

} // namespace holant::gf2
