#include "sdtop/gf2.hpp"

#include <bit>

namespace sdtop {

void Gf2RankAccumulator::add_row(std::vector<std::uint64_t>& row) {
    for (std::size_t p = 0; p < pivot_rows_.size(); ++p) {
        int c = pivot_cols_[p];
        if ((row[static_cast<std::size_t>(c >> 6)] >> (c & 63)) & 1ULL) {
            const auto& pr = pivot_rows_[p];
            for (int w = 0; w < words_; ++w) row[static_cast<std::size_t>(w)] ^= pr[static_cast<std::size_t>(w)];
        }
    }
    for (int w = 0; w < words_; ++w) {
        if (row[static_cast<std::size_t>(w)]) {
            int c = w * 64 + std::countr_zero(row[static_cast<std::size_t>(w)]);
            pivot_cols_.push_back(c);
            pivot_rows_.push_back(row);
            return;
        }
    }
}

int Gf2Matrix::rank() const {
    Gf2RankAccumulator acc(cols_);
    std::vector<std::uint64_t> row(static_cast<std::size_t>(words_));
    for (int r = 0; r < rows_; ++r) {
        const std::uint64_t* src = this->row(r);
        for (int w = 0; w < words_; ++w) row[static_cast<std::size_t>(w)] = src[w];
        acc.add_row(row);
    }
    return acc.rank();
}

std::string Gf2Matrix::dump() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_ + 1));
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

}  // namespace sdtop
