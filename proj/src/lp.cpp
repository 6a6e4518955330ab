#include "arthur/lp.hpp"

#include "arthur/errors.hpp"

namespace arthur {

// Tableau simplex, phase one only. Variables: y = u - v with u, v >= 0,
// slack w, artificial a; minimize the artificial sum.
std::optional<RatVec> feasible_point(const std::vector<RatVec>& rows, int dim) {
    int m = static_cast<int>(rows.size());
    if (m == 0) return RatVec(dim);
    if (dim == 0) return std::nullopt;

    int ncols = 2 * dim + 2 * m;
    int art0 = 2 * dim + m;
    std::vector<RatVec> T(m, RatVec(ncols));
    RatVec rhs(m, Rat(1));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < dim; ++j) {
            T[i][j] = rows[i][j];
            T[i][dim + j] = -rows[i][j];
        }
        T[i][2 * dim + i] = Rat(-1);
        T[i][art0 + i] = Rat(1);
        basis[i] = art0 + i;
    }

    // Objective row for minimizing the artificial sum.
    RatVec obj(ncols);
    Rat obj_rhs;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < ncols; ++j) obj[j] += T[i][j];
        obj_rhs += rhs[i];
    }
    for (int i = 0; i < m; ++i) obj[art0 + i] -= Rat(1);

    auto pivot = [&](int pr, int pc) {
        Rat inv = Rat(1) / T[pr][pc];
        for (int j = 0; j < ncols; ++j) T[pr][j] *= inv;
        rhs[pr] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == pr || T[i][pc].is_zero()) continue;
            Rat f = T[i][pc];
            for (int j = 0; j < ncols; ++j) T[i][j] -= f * T[pr][j];
            rhs[i] -= f * rhs[pr];
        }
        if (!obj[pc].is_zero()) {
            Rat f = obj[pc];
            for (int j = 0; j < ncols; ++j) obj[j] -= f * T[pr][j];
            obj_rhs -= f * rhs[pr];
        }
        basis[pr] = pc;
    };

    for (;;) {
        int entering = -1;
        for (int j = 0; j < ncols; ++j)
            if (obj[j] > Rat(0)) {
                entering = j;
                break;
            }
        if (entering < 0) break;
        int leaving = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (T[i][entering] <= Rat(0)) continue;
            Rat ratio = rhs[i] / T[i][entering];
            if (leaving < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leaving])) {
                best = ratio;
                leaving = i;
            }
        }
        if (leaving < 0) fail(Err::InternalError, "phase-one simplex unbounded");
        pivot(leaving, entering);
    }

    if (!obj_rhs.is_zero()) return std::nullopt;

    RatVec y(dim);
    for (int i = 0; i < m; ++i) {
        if (basis[i] < dim)
            y[basis[i]] += rhs[i];
        else if (basis[i] < 2 * dim)
            y[basis[i] - dim] -= rhs[i];
    }
    return y;
}

}  // namespace arthur
