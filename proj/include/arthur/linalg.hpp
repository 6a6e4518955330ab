#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arthur/rational.hpp"

namespace arthur {

using RatVec = std::vector<Rat>;
using IntVec = std::vector<long long>;

RatVec to_rat(const IntVec& v);
RatVec rv_add(const RatVec& a, const RatVec& b);
RatVec rv_sub(const RatVec& a, const RatVec& b);
RatVec rv_scale(const Rat& c, const RatVec& v);
Rat rv_dot(const RatVec& a, const RatVec& b);
bool rv_is_zero(const RatVec& v);
std::string rv_str(const RatVec& v);

// Dense exact rational matrix, row major.
struct RatMat {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static RatMat identity(int n);

    Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    RatVec apply(const RatVec& v) const;
    RatMat mul(const RatMat& o) const;
    RatMat transpose() const;
    bool operator==(const RatMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Rat rm_det(RatMat m);

// Solves A x = b for square nonsingular A; nullopt if singular.
std::optional<RatVec> rm_solve(RatMat A, RatVec b);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rm_rref(RatMat& m);

int rm_rank(RatMat m);

// Deterministic basis of the kernel of m (free-variable unit extension of RREF).
std::vector<RatVec> rm_kernel(const RatMat& m);

// Columns of m spanning its column space, reduced to a deterministic basis.
std::vector<RatVec> rv_span_basis(const std::vector<RatVec>& vecs);

// Integer matrix helpers for lattice-level data (roots, Weyl matrices, sigma).
struct IntMat {
    int n = 0;
    std::vector<long long> a;

    IntMat() = default;
    explicit IntMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0) {}
    static IntMat identity(int dim);

    long long& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
    long long at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }

    IntVec apply(const IntVec& v) const;
    RatVec apply(const RatVec& v) const;
    IntMat mul(const IntMat& o) const;
    IntMat transpose() const;
    bool is_identity() const;
    bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }
    bool operator<(const IntMat& o) const { return a < o.a; }
};

long long im_det(const IntMat& m);
RatMat to_rat(const IntMat& m);

}  // namespace arthur
