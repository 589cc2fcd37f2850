#include "k3gw/linsolve.hpp"

#include <stdexcept>

namespace k3gw {

LinearSolution solve_linear(GQMatrix A, std::vector<GQ> b) {
    const std::size_t m = A.size();
    if (b.size() != m) throw std::invalid_argument("solve_linear: size mismatch");
    const std::size_t n = m ? A[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && A[p][col].is_zero()) ++p;
        if (p == m) continue;
        std::swap(A[p], A[row]);
        std::swap(b[p], b[row]);
        GQ inv = A[row][col].inverse();
        for (std::size_t j = col; j < n; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            GQ f = A[r][col];
            for (std::size_t j = col; j < n; ++j)
                if (!A[row][j].is_zero()) A[r][j] -= f * A[row][j];
            b[r] -= f * b[row];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    LinearSolution s;
    s.rank = static_cast<int>(row);
    for (std::size_t r = row; r < m; ++r)
        if (!b[r].is_zero()) return s;
    s.x.assign(n, GQ(0));
    for (std::size_t r = 0; r < row; ++r) s.x[pivot_col[r]] = b[r];
    s.status = row == n ? LinearSolution::Status::unique : LinearSolution::Status::underdetermined;
    return s;
}

GQ determinant(GQMatrix A) {
    const std::size_t n = A.size();
    GQ det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && A[p][col].is_zero()) ++p;
        if (p == n) return GQ(0);
        if (p != col) {
            std::swap(A[p], A[col]);
            det = -det;
        }
        det *= A[col][col];
        GQ inv = A[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            GQ f = A[r][col] * inv;
            for (std::size_t j = col; j < n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    return det;
}

}  // namespace k3gw
