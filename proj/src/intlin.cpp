#include "evpos/intlin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace evpos {

namespace {

using BMat = std::vector<std::vector<BigInt>>;

BMat to_big(const IntMat& a) {
    BMat b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        b[i].assign(a[i].begin(), a[i].end());
    return b;
}

Int to_small(const BigInt& x) {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
        throw std::overflow_error("integer matrix entry out of range");
    return x.convert_to<Int>();
}

IntMat to_small(const BMat& a) {
    IntMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i].reserve(a[i].size());
        for (const auto& x : a[i]) r[i].push_back(to_small(x));
    }
    return r;
}

// Reduces to row echelon form in place by integer row operations and returns
// the rank.  Only the first `limit_cols` columns are eliminated (pass the full
// width for a plain rank computation); trailing columns ride along, which is
// what the kernel computation needs.
int echelonize(BMat& m, std::size_t limit_cols) {
    std::size_t rows = m.size();
    std::size_t top = 0;
    for (std::size_t col = 0; col < limit_cols && top < rows; ++col) {
        // Euclidean elimination: repeatedly reduce entries in this column
        // against the one of smallest absolute value until one remains.
        while (true) {
            std::size_t pivot = rows;
            for (std::size_t i = top; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                if (pivot == rows || abs(m[i][col]) < abs(m[pivot][col])) pivot = i;
            }
            if (pivot == rows) break;  // column already clear
            std::swap(m[top], m[pivot]);
            bool clear = true;
            for (std::size_t i = top + 1; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                BigInt q = m[i][col] / m[top][col];
                if (q != 0)
                    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= q * m[top][j];
                if (m[i][col] != 0) clear = false;
            }
            if (clear) {
                ++top;
                break;
            }
        }
    }
    return static_cast<int>(top);
}

}  // namespace

int integer_rank(const IntMat& a) {
    if (a.empty()) return 0;
    BMat m = to_big(a);
    return echelonize(m, m[0].size());
}

BigInt integer_determinant(const IntMat& a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    BMat m = to_big(a);
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Int content(const IntVec& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = content(v);
    if (g == 0) throw std::invalid_argument("primitive part of the zero vector");
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

IntMat integer_kernel_basis(const IntMat& a, int c) {
    if (c < 0) throw std::invalid_argument("negative column count");
    std::size_t cols = static_cast<std::size_t>(c);
    std::size_t rows = a.size();
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");

    // Augmented transpose [A^T | I]: integer row reduction of the first block
    // leaves kernel generators in the identity block of the zero rows.
    BMat m(cols, std::vector<BigInt>(rows + cols, BigInt(0)));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < rows; ++j) m[i][j] = a[j][i];
        m[i][rows + i] = 1;
    }
    echelonize(m, rows);

    IntMat kernel;
    for (const auto& row : m) {
        bool zero = true;
        for (std::size_t j = 0; j < rows && zero; ++j) zero = (row[j] == 0);
        if (!zero) continue;
        std::vector<BigInt> v(row.begin() + static_cast<std::ptrdiff_t>(rows), row.end());
        kernel.push_back(to_small(BMat{v})[0]);
    }
    return hermite_row_basis(std::move(kernel));
}

IntMat hermite_row_basis(IntMat rows) {
    if (rows.empty()) return rows;
    BMat m = to_big(rows);
    std::size_t cols = m[0].size();
    int rank = echelonize(m, cols);
    m.resize(static_cast<std::size_t>(rank));

    // Normalize: positive pivots, entries above each pivot reduced.
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::size_t p = 0;
        while (p < cols && m[i][p] == 0) ++p;
        if (p == cols) continue;
        if (m[i][p] < 0)
            for (auto& x : m[i]) x = -x;
        for (std::size_t k = 0; k < i; ++k) {
            BigInt q;
            // floor division so the residue lands in [0, pivot)
            BigInt num = m[k][p];
            BigInt div = m[i][p];
            q = num / div;
            if (q * div > num) q -= 1;
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) m[k][j] -= q * m[i][j];
        }
    }
    return to_small(m);
}

std::vector<BigInt> smith_diagonal(const IntMat& a) {
    BMat m = to_big(a);
    std::vector<BigInt> diag;
    std::size_t r0 = 0, c0 = 0;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    while (r0 < rows && c0 < cols) {
        // find smallest nonzero entry in the remaining block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = r0; i < rows; ++i)
            for (std::size_t j = c0; j < cols; ++j)
                if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;  // block is zero
        std::swap(m[r0], m[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pj]);

        bool clean = true;
        for (std::size_t i = r0 + 1; i < rows; ++i) {
            BigInt q = m[i][c0] / m[r0][c0];
            if (q != 0)
                for (std::size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
            if (m[i][c0] != 0) clean = false;
        }
        for (std::size_t j = c0 + 1; j < cols; ++j) {
            BigInt q = m[r0][j] / m[r0][c0];
            if (q != 0)
                for (std::size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
            if (m[r0][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repeat the pivot hunt

        // enforce divisibility of the rest of the block by the pivot
        bool divides = true;
        for (std::size_t i = r0 + 1; i < rows && divides; ++i)
            for (std::size_t j = c0 + 1; j < cols && divides; ++j)
                if (m[i][j] % m[r0][c0] != 0) {
                    for (std::size_t jj = c0; jj < cols; ++jj) m[r0][jj] += m[i][jj];
                    divides = false;
                }
        if (!divides) continue;

        diag.push_back(abs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    return diag;
}

}  // namespace evpos
