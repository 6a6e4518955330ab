#include "arthur/linalg.hpp"

#include <sstream>

#include "arthur/errors.hpp"

namespace arthur {

RatVec to_rat(const IntVec& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

RatVec rv_add(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RatVec rv_sub(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVec rv_scale(const Rat& c, const RatVec& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

Rat rv_dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) fail(Err::InternalError, "dot product dimension mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool rv_is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::string rv_str(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

RatVec RatMat::apply(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols) fail(Err::InternalError, "matrix apply dimension mismatch");
    RatVec out(rows);
    for (int r = 0; r < rows; ++r) {
        Rat s;
        for (int c = 0; c < cols; ++c) s += at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

RatMat RatMat::mul(const RatMat& o) const {
    if (cols != o.rows) fail(Err::InternalError, "matrix multiply dimension mismatch");
    RatMat out(rows, o.cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < cols; ++k) {
            if (at(r, k).is_zero()) continue;
            for (int c = 0; c < o.cols; ++c) out.at(r, c) += at(r, k) * o.at(k, c);
        }
    return out;
}

RatMat RatMat::transpose() const {
    RatMat out(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.at(c, r) = at(r, c);
    return out;
}

Rat rm_det(RatMat m) {
    if (m.rows != m.cols) fail(Err::InternalError, "determinant of non-square matrix");
    int n = m.rows;
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Rat f = m.at(r, col) * inv;
            for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

std::optional<RatVec> rm_solve(RatMat A, RatVec b) {
    if (A.rows != A.cols || static_cast<int>(b.size()) != A.rows)
        fail(Err::InternalError, "solve expects square system");
    int n = A.rows;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!A.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A.at(piv, c), A.at(col, c));
            std::swap(b[piv], b[col]);
        }
        Rat inv = Rat(1) / A.at(col, col);
        for (int c = col; c < n; ++c) A.at(col, c) *= inv;
        b[col] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || A.at(r, col).is_zero()) continue;
            Rat f = A.at(r, col);
            for (int c = col; c < n; ++c) A.at(r, c) -= f * A.at(col, c);
            b[r] -= f * b[col];
        }
    }
    return b;
}

std::vector<int> rm_rref(RatMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rat inv = Rat(1) / m.at(row, col);
        for (int c = 0; c < m.cols; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rat f = m.at(r, col);
            for (int c = 0; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rm_rank(RatMat m) { return static_cast<int>(rm_rref(m).size()); }

std::vector<RatVec> rm_kernel(const RatMat& m) {
    RatMat r = m;
    std::vector<int> pivots = rm_rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(m.cols);
        v[free] = Rat(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<RatVec> rv_span_basis(const std::vector<RatVec>& vecs) {
    if (vecs.empty()) return {};
    int dim = static_cast<int>(vecs[0].size());
    RatMat m(static_cast<int>(vecs.size()), dim);
    for (size_t r = 0; r < vecs.size(); ++r)
        for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = vecs[r][c];
    std::vector<int> pivots = rm_rref(m);
    std::vector<RatVec> basis;
    for (size_t r = 0; r < pivots.size(); ++r) {
        RatVec v(dim);
        for (int c = 0; c < dim; ++c) v[c] = m.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

IntMat IntMat::identity(int dim) {
    IntMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

IntVec IntMat::apply(const IntVec& v) const {
    IntVec out(n, 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r] += at(r, c) * v[c];
    return out;
}

RatVec IntMat::apply(const RatVec& v) const {
    RatVec out(n);
    for (int r = 0; r < n; ++r) {
        Rat s;
        for (int c = 0; c < n; ++c)
            if (at(r, c) != 0) s += Rat(at(r, c)) * v[c];
        out[r] = s;
    }
    return out;
}

IntMat IntMat::mul(const IntMat& o) const {
    IntMat out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            long long v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < n; ++c) out.at(r, c) += v * o.at(k, c);
        }
    return out;
}

IntMat IntMat::transpose() const {
    IntMat out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(c, r) = at(r, c);
    return out;
}

bool IntMat::is_identity() const {
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

long long im_det(const IntMat& m) {
    Rat d = rm_det(to_rat(m));
    return d.to_int();
}

RatMat to_rat(const IntMat& m) {
    RatMat out(m.n, m.n);
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) out.at(r, c) = Rat(m.at(r, c));
    return out;
}

}  // namespace arthur
