#pragma once

#include <cstdint>
#include <vector>

#include "arthur/linalg.hpp"

namespace arthur {

inline constexpr long long kDefaultHyperplaneCap = 128;
inline constexpr long long kDefaultChamberCap = 200000;

// One hyperplane of a central arrangement, stored as a canonical normal:
// primitive integer entries, first nonzero entry positive.
struct Hyperplane {
    RatVec normal;
    std::vector<int> sources;       // indices of input functionals on this wall
    std::vector<int> source_signs;  // +1 if that functional is a positive multiple
};

struct Chamber {
    std::vector<int8_t> signs;  // one entry per hyperplane
    RatVec witness;             // strictly off every hyperplane, matching signs
};

// Codimension-one face spanning a single hyperplane; the common face of the
// two chambers on its sides.
struct Facet {
    int wall = -1;
    std::vector<int8_t> signs;  // entry at `wall` is 0
    RatVec witness;
    int chamber_pos = -1;
    int chamber_neg = -1;
};

class Arrangement {
public:
    static Arrangement build(int dim, const std::vector<RatVec>& functionals,
                             long long hyperplane_cap = kDefaultHyperplaneCap);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(hps_.size()); }
    const Hyperplane& hyperplane(int i) const { return hps_[i]; }
    const std::vector<Hyperplane>& hyperplanes() const { return hps_; }

    // Hyperplane index of an input functional, with the sign relating them.
    int source_hyperplane(int source, int* sign_out = nullptr) const;

    int sign_of(int h, const RatVec& point) const;
    std::vector<int8_t> sign_vector(const RatVec& point) const;  // all entries nonzero required elsewhere

private:
    int dim_ = 0;
    std::vector<Hyperplane> hps_;
    std::vector<std::pair<int, int>> source_map_;  // per input functional: (hyperplane, sign)
};

// Complete chamber list via incremental splitting with exact LP witnesses.
// Deterministic output: chambers sorted lexicographically by sign vector.
std::vector<Chamber> enumerate_chambers(const Arrangement& arr,
                                        long long chamber_cap = kDefaultChamberCap);

// All codimension-one facets, from chamber pairs whose sign vectors differ in
// exactly one coordinate. Chamber indices refer to the given list.
std::vector<Facet> enumerate_facets(const Arrangement& arr, const std::vector<Chamber>& chambers);

// For each chamber, the facet indices on its boundary.
std::vector<std::vector<int>> chamber_facet_incidence(int num_chambers,
                                                      const std::vector<Facet>& facets);

}  // namespace arthur
