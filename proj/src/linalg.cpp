#include "charmod/linalg.hpp"

#include <cassert>

namespace charmod {

QVec q_add(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec q_sub(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec q_scale(const Rat& c, const QVec& a) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Rat q_dot(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rat r;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Rat zq_dot(const ZVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rat r;
    for (size_t i = 0; i < a.size(); ++i) r += Rat(a[i]) * b[i];
    return r;
}

Int z_dot(const ZVec& a, const ZVec& b) {
    assert(a.size() == b.size());
    Int r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

QVec z_to_q(const ZVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

std::vector<int> rref(QMat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = Rat(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

int rank(QMat a) { return (int)rref(a).size(); }

Rat det(QMat a) {
    size_t n = a.size();
    Rat d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        Rat inv = Rat(1) / a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            Rat f = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
    assert(a.size() == b.size());
    if (a.empty()) return QVec{};
    size_t cols = a[0].size();
    QMat aug = a;
    for (size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    QVec x(cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == (int)cols) return std::nullopt; // 0 = 1 row
        x[pivots[i]] = aug[i][cols];
    }
    return x;
}

std::vector<QVec> nullspace(const QMat& a, int ncols) {
    QMat m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (int c = 0; c < ncols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(ncols, Rat(0));
        v[c] = Rat(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

HnfResult row_hnf(const ZMat& m) {
    HnfResult res;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    res.h = m;
    res.u.assign(rows, ZVec(rows, 0));
    for (size_t i = 0; i < rows; ++i) res.u[i][i] = 1;

    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid column c down to a single nonzero entry at row r.
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i) {
                if (res.h[i][c] == 0) continue;
                if (best == rows || cmp(abs(res.h[i][c]), abs(res.h[best][c])) < 0) best = i;
            }
            if (best == rows) break;
            std::swap(res.h[best], res.h[r]);
            std::swap(res.u[best], res.u[r]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (res.h[i][c] == 0) continue;
                Int q = res.h[i][c] / res.h[r][c]; // truncated division is fine here
                if (q != 0) {
                    for (size_t j = 0; j < cols; ++j) res.h[i][j] -= q * res.h[r][j];
                    for (size_t j = 0; j < rows; ++j) res.u[i][j] -= q * res.u[r][j];
                }
                if (res.h[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (res.h[r][c] == 0) continue;
        if (res.h[r][c] < 0) {
            for (size_t j = 0; j < cols; ++j) res.h[r][j] = -res.h[r][j];
            for (size_t j = 0; j < rows; ++j) res.u[r][j] = -res.u[r][j];
        }
        // Reduce entries above the pivot into [0, pivot).
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), res.h[i][c].get_mpz_t(), res.h[r][c].get_mpz_t());
            if (q != 0) {
                for (size_t j = 0; j < cols; ++j) res.h[i][j] -= q * res.h[r][j];
                for (size_t j = 0; j < rows; ++j) res.u[i][j] -= q * res.u[r][j];
            }
        }
        ++r;
    }
    res.rank = (int)r;
    return res;
}

ZMat integer_kernel(const ZMat& m, int ncols) {
    // Kernel rows x with x . m^T = 0: run HNF on m^T's transpose trick —
    // operate on rows of [m^T] via the transform of HNF(m transposed).
    ZMat mt((size_t)ncols, ZVec(m.size(), 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < ncols; ++j) mt[j][i] = m[i][j];
    HnfResult h = row_hnf(mt);
    ZMat out;
    for (size_t i = h.rank; i < mt.size(); ++i) out.push_back(h.u[i]);
    return out;
}

ZMat saturate_span(const ZMat& rows, int ncols) {
    ZMat orth = integer_kernel(rows, ncols);
    return integer_kernel(orth, ncols);
}

} // namespace charmod
