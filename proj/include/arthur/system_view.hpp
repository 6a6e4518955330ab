#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "arthur/arrangement.hpp"
#include "arthur/linalg.hpp"
#include "arthur/root_datum.hpp"

namespace arthur {

// A root system presented on an abstract rational space V. Points (the x side
// of the constants) live in V; root functionals pair against them and coroots
// are vectors of V. Used for the abstract chamber computations, for real-root
// systems restricted to a_M, and for wall subsystems.
struct RootSystemView {
    int dim = 0;
    std::vector<RatVec> roots;    // functionals on V
    std::vector<RatVec> coroots;  // vectors in V

    int num_roots() const { return static_cast<int>(roots.size()); }
    bool empty() const { return roots.empty(); }
    void validate() const;  // pairing 2, reflections permute the system, reduced
    int root_index(const RatVec& functional) const;
};

struct ViewWeylElement {
    RatMat point_mat;  // action on V
    RatMat funct_mat;  // action on V*
    int length = 0;
    int sign = 1;
};

class ViewWeyl {
public:
    ViewWeyl() = default;
    ViewWeyl(const RootSystemView& view, long long cap = kDefaultWeylCap);

    int size() const { return static_cast<int>(elems_.size()); }
    const ViewWeylElement& operator[](int i) const { return elems_[i]; }
    const std::vector<int>& simple_roots() const { return simple_roots_; }
    std::optional<int> minus_one() const { return minus_one_; }
    int index_of_point_mat(const RatMat& m) const;

private:
    std::vector<ViewWeylElement> elems_;
    std::map<std::vector<Rat>, int> index_;
    std::vector<int> simple_roots_;
    std::optional<int> minus_one_;
};

// Restriction of a view to the span of its coroots, with the transfer maps.
struct EssentialView {
    RootSystemView view;
    RatMat point_proj;      // V -> span coordinates (along the common root kernel)
    RatMat funct_restrict;  // V* -> functionals on the span
    int ambient_dim = 0;
};

EssentialView essentialize(const RootSystemView& v);

// The abstract system of a datum: points in the coweight space, functionals
// the roots. Used for all chamber/facet/constant computations.
RootSystemView datum_view(const RealRootDatum& datum);

// Real-root subsystem of a datum as an essential view; the point projection
// implements a_M -> a_M/a_G and the functional restriction implements p_M.
EssentialView real_root_view(const RealRootDatum& datum);

class ChamberComplex;

// Root subsystem living on a wall of a bigger complex, with transfer maps
// from the wall subspace of the parent.
struct WallSystem {
    int hyperplane = -1;
    std::vector<int> parent_roots;      // parent root indices whose coroots lie in the wall
    RatMat point_to_wall;               // parent V -> wall coordinates (valid on the wall)
    RatMat funct_to_wall;               // parent V* -> wall functionals
    EssentialView essential;            // wall system reduced to its own span
    std::unique_ptr<ChamberComplex> complex;

    RatVec wall_point(const RatVec& parent_point) const;
    RatVec wall_functional(const RatVec& parent_functional) const;
};

// Chambers, facets and Weyl action of the full root arrangement of an
// essential root system view.
class ChamberComplex {
public:
    explicit ChamberComplex(RootSystemView view, long long weyl_cap = kDefaultWeylCap);

    const RootSystemView& view() const { return view_; }
    const Arrangement& arrangement() const { return arr_; }
    const std::vector<Chamber>& chambers() const { return chambers_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const ViewWeyl& weyl() const { return weyl_; }
    int rank() const { return view_.dim; }

    int chamber_index(const std::vector<int8_t>& signs) const;
    // Chamber containing a regular point; IrregularCharacter when on a wall.
    int chamber_of(const RatVec& point) const;
    int base_chamber() const { return base_chamber_; }
    // Weyl element carrying the base chamber to this chamber.
    int chamber_rep(int chamber) const { return chamber_rep_[chamber]; }

    // Action of Weyl elements on chambers and facets via the induced
    // hyperplane permutation.
    int chamber_action(int weyl_elem, int chamber) const;
    int facet_action(int weyl_elem, int facet) const;
    int facet_index(int wall, const std::vector<int8_t>& signs) const;

    // Closed dual cone membership: lambda nonnegative on the chamber closure.
    bool lambda_in_dual_cone(int chamber, const RatVec& lambda) const;
    // Dual chamber membership: lambda pairs strictly positively with the
    // coroots of every root positive on the chamber.
    bool lambda_in_dual_chamber(int chamber, const RatVec& lambda) const;

    const WallSystem& wall(int hyperplane) const;

private:
    struct HyperplaneAction {
        std::vector<int> perm;
        std::vector<int8_t> flip;
    };
    const HyperplaneAction& action_of(int weyl_elem) const;

    RootSystemView view_;
    Arrangement arr_;
    std::vector<Chamber> chambers_;
    std::vector<Facet> facets_;
    ViewWeyl weyl_;
    int base_chamber_ = 0;
    std::vector<int> chamber_rep_;
    std::vector<int> simple_functionals_;  // root indices, simple for the base chamber
    std::map<std::vector<int8_t>, int> chamber_by_signs_;
    std::map<std::pair<int, std::vector<int8_t>>, int> facet_by_key_;
    mutable std::map<int, HyperplaneAction> action_cache_;
    mutable std::map<int, std::unique_ptr<WallSystem>> wall_cache_;
    mutable std::map<int, RatMat> dual_solver_cache_;
    long long weyl_cap_ = kDefaultWeylCap;
};

// Counting data used by the facet-counting identities.
struct WallCount {
    int hyperplane = -1;
    long long facets_in_wall = 0;
    long long wall_weyl_order = 0;
    long long n_alpha = 0;  // facets_in_wall / wall_weyl_order
    bool per_chamber_uniform = true;
};

std::vector<WallCount> wall_facet_counts(const ChamberComplex& cx);

struct FacetOrbitData {
    int num_orbits = 0;
    std::vector<long long> stabilizer_orders;  // one per facet, |W| / orbit size
};

FacetOrbitData facet_orbit_data(const ChamberComplex& cx);

}  // namespace arthur
