#include "sdtop/exact_linalg.hpp"

#include <stdexcept>

namespace sdtop {

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), m = b.size(), q = b.empty() ? 0 : b[0].size();
    IntMat out(n, std::vector<long long>(q, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != m) throw std::invalid_argument("int_mat_mul: shape mismatch");
        for (std::size_t k = 0; k < m; ++k) {
            long long aik = a[i][k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < q; ++j) out[i][j] += aik * b[k][j];
        }
    }
    return out;
}

IntMat int_identity(int n) {
    IntMat out(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return out;
}

bool int_mat_eq(const IntMat& a, const IntMat& b) { return a == b; }

IntMat int_transpose(const IntMat& a) {
    std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    IntMat out(m, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out[j][i] = a[i][j];
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

std::vector<RatVec> rat_kernel(RatMat a) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<int> pivot_col_of_row;
    std::vector<char> is_pivot_col(cols, 0);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        Rat inv = a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        is_pivot_col[c] = 1;
        ++r;
    }
    std::vector<RatVec> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot_col[c]) continue;
        RatVec v(cols, Rat(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
            v[static_cast<std::size_t>(pivot_col_of_row[i])] = -a[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_scale(const Poly& a, const Rat& c) {
    Poly out(a);
    for (auto& x : out) x *= c;
    return out;
}

bool poly_eq(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        Rat x = i < a.size() ? a[i] : Rat(0);
        Rat y = i < b.size() ? b[i] : Rat(0);
        if (x != y) return false;
    }
    return true;
}

Rat poly_eval(const Poly& a, const Rat& x) {
    Rat out(0);
    for (std::size_t i = a.size(); i-- > 0;) out = out * x + a[i];
    return out;
}

Poly poly_x_minus_one_pow(int m) {
    Poly out{Rat(1)};
    Poly xm1{Rat(-1), Rat(1)};
    for (int i = 0; i < m; ++i) out = poly_mul(out, xm1);
    return out;
}

}  // namespace sdtop
