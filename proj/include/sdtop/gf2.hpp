#ifndef SDTOP_GF2_HPP
#define SDTOP_GF2_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sdtop {

/// Dense GF(2) matrix, rows packed into 64-bit blocks.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_), 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c) {
        data_[static_cast<std::size_t>(r) * words_ + static_cast<std::size_t>(c >> 6)] |=
            (1ULL << (c & 63));
    }
    bool get(int r, int c) const {
        return (data_[static_cast<std::size_t>(r) * words_ + static_cast<std::size_t>(c >> 6)] >>
                (c & 63)) & 1ULL;
    }
    const std::uint64_t* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * words_; }
    int words_per_row() const { return words_; }

    int rank() const;

    /// Plain-text bit grid, for debugging.
    std::string dump() const;

private:
    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Streaming row-echelon rank over GF(2). Rows are fed one at a time as
/// packed words; pivot rows are retained.
class Gf2RankAccumulator {
public:
    explicit Gf2RankAccumulator(int cols) : cols_(cols), words_((cols + 63) / 64) {}

    int cols() const { return cols_; }
    int words() const { return words_; }
    int rank() const { return static_cast<int>(pivot_rows_.size()); }

    /// Reduces the row in place against current pivots; keeps it if nonzero.
    void add_row(std::vector<std::uint64_t>& row);

    void reset() {
        pivot_rows_.clear();
        pivot_cols_.clear();
    }

private:
    int cols_, words_;
    std::vector<std::vector<std::uint64_t>> pivot_rows_;
    std::vector<int> pivot_cols_;
};

}  // namespace sdtop

#endif  // SDTOP_GF2_HPP
