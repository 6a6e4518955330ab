#pragma once

#include <vector>

#include "arthur/arrangement.hpp"
#include "arthur/root_datum.hpp"

namespace arthur {

// The two chamber systems of a_M = (coweights ⊗ R)^{sigma = +1}: the full
// system cut by all roots outside R_M (whose chambers correspond to the
// parabolic subgroups with Levi M), and the coarser one cut by the real
// roots only, on which W_L acts simply transitively.
class AmGeometry {
public:
    AmGeometry(const RealRootDatum& datum, const WeylGroup& weyl);

    const RealRootDatum& datum() const { return *datum_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<CoweightVec>& basis() const { return basis_; }

    // Coordinates of an a_M point relative to the basis; the point must lie
    // in a_M.
    RatVec am_coords(const CoweightVec& x) const;
    CoweightVec from_am(const RatVec& coords) const;
    // A weight functional restricted to a_M (this is the pairing against
    // p_M of the weight).
    RatVec restrict_weight(const WeightVec& w) const;

    const Arrangement& p_arrangement() const { return p_arr_; }
    const Arrangement& l_arrangement() const { return l_arr_; }
    const std::vector<Chamber>& p_chambers() const { return p_chambers_; }
    const std::vector<Chamber>& l_chambers() const { return l_chambers_; }

    // Unique L-chamber containing the given P-chamber.
    int l_chamber_of_p(int pc) const;
    int l_chamber_of_point(const RatVec& am_point) const;

    // Root indices of R_N for a P-chamber: the roots outside R_M positive on it.
    std::vector<int> parabolic_of_p(int pc) const;
    // Real roots positive on an L-chamber (a positive system of R_L).
    std::vector<int> positive_reals_of_l(int lc) const;

    // W_L as indices into the full Weyl group, and its action on L-chambers.
    const std::vector<int>& wl_elements() const { return wl_; }
    int wl_action_on_l(int weyl_index, int lc) const;
    // Index within wl_elements() of the element mapping the base L-chamber
    // to lc; simple transitivity is verified at construction.
    int wl_rep_of_l(int lc) const { return l_rep_[lc]; }
    int base_l_chamber() const { return base_l_; }

private:
    const RealRootDatum* datum_;
    const WeylGroup* weyl_;
    std::vector<CoweightVec> basis_;
    RatMat coords_solver_;  // (B^T B)^{-1} B^T
    std::vector<int> p_sources_;  // root indices feeding the P arrangement
    std::vector<int> l_sources_;
    Arrangement p_arr_;
    Arrangement l_arr_;
    std::vector<Chamber> p_chambers_;
    std::vector<Chamber> l_chambers_;
    std::vector<int> wl_;
    std::vector<int> l_rep_;
    int base_l_ = 0;
};

}  // namespace arthur
