#pragma once

#include "arthur/linalg.hpp"

namespace arthur {

// Weight-lattice and coweight-lattice vectors are distinct types so that only
// the canonical pairing <weight, coweight> can be formed.
template <class Tag>
struct TypedVec {
    RatVec c;

    TypedVec() = default;
    explicit TypedVec(RatVec v) : c(std::move(v)) {}
    explicit TypedVec(const IntVec& v) : c(to_rat(v)) {}
    static TypedVec zero(int dim) { return TypedVec(RatVec(dim)); }

    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const { return rv_is_zero(c); }
    std::string str() const { return rv_str(c); }

    friend TypedVec operator+(const TypedVec& a, const TypedVec& b) { return TypedVec(rv_add(a.c, b.c)); }
    friend TypedVec operator-(const TypedVec& a, const TypedVec& b) { return TypedVec(rv_sub(a.c, b.c)); }
    friend TypedVec operator*(const Rat& s, const TypedVec& v) { return TypedVec(rv_scale(s, v.c)); }
    TypedVec operator-() const { return TypedVec(rv_scale(Rat(-1), c)); }
    friend bool operator==(const TypedVec& a, const TypedVec& b) { return a.c == b.c; }
    friend bool operator<(const TypedVec& a, const TypedVec& b) { return a.c < b.c; }
};

struct WeightTag {};
struct CoweightTag {};

using WeightVec = TypedVec<WeightTag>;
using CoweightVec = TypedVec<CoweightTag>;

inline Rat pairing(const WeightVec& w, const CoweightVec& x) { return rv_dot(w.c, x.c); }

}  // namespace arthur
