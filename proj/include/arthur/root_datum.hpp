#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arthur/linalg.hpp"
#include "arthur/weights.hpp"

namespace arthur {

inline constexpr long long kDefaultWeylCap = 60000;

// Raw integer input for a real root datum, as it arrives from configuration.
struct RawDatum {
    int rank = 0;
    std::vector<IntVec> roots;
    std::vector<IntVec> coroots;
    std::vector<IntVec> sigma;  // rank x rank matrix acting on the weight lattice
};

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Galois involution of the torus. Supplied on the weight lattice; the coweight
// action is the inverse transpose, which for an involution is the plain
// transpose.
struct Involution {
    IntMat on_weights;
    IntMat on_coweights;

    WeightVec apply(const WeightVec& v) const { return WeightVec(on_weights.apply(v.c)); }
    CoweightVec apply(const CoweightVec& v) const { return CoweightVec(on_coweights.apply(v.c)); }
};

struct WeylElement {
    IntMat mat;    // action on the weight lattice
    IntMat comat;  // induced action on the coweight lattice (inverse transpose)
    int length = 0;
    int sign = 1;

    WeightVec apply(const WeightVec& v) const { return WeightVec(mat.apply(v.c)); }
    CoweightVec apply(const CoweightVec& v) const { return CoweightVec(comat.apply(v.c)); }
};

struct RootClassification {
    std::vector<int> real_roots;       // sigma(a) = a
    std::vector<int> imaginary_roots;  // sigma(a) = -a
    std::vector<int> complex_roots;
};

class RealRootDatum {
public:
    static ValidationReport validate(const RawDatum& raw);
    // Throws ValidationError listing all violated invariants.
    explicit RealRootDatum(const RawDatum& raw);

    int rank() const { return rank_; }
    int num_roots() const { return static_cast<int>(roots_.size()); }
    const std::vector<IntVec>& root_coords() const { return roots_; }
    const std::vector<IntVec>& coroot_coords() const { return coroots_; }
    WeightVec root(int i) const { return WeightVec(roots_[i]); }
    CoweightVec coroot(int i) const { return CoweightVec(coroots_[i]); }
    const Involution& sigma() const { return sigma_; }

    // Index of a root given by coordinates; -1 if absent.
    int root_index(const IntVec& coords) const;
    int negative_of(int root) const { return neg_root_[root]; }
    int sigma_image(int root) const { return sigma_root_[root]; }

    const RootClassification& classification() const { return cls_; }
    bool is_real(int root) const;
    bool is_imaginary(int root) const;

    // Reflection in root i, as lattice matrices.
    WeylElement reflection(int i) const;

    // Projection onto the sigma = +1 part of the weight space: (v + sigma v)/2.
    WeightVec project_pM(const WeightVec& v) const;
    CoweightVec project_pM(const CoweightVec& v) const;
    // Projection onto the subspace fixed by sigma and the full Weyl group.
    WeightVec project_pG(const WeightVec& v) const;
    CoweightVec project_pG(const CoweightVec& v) const;

    // Rational bases of the structural subspaces of the coweight space.
    // All are deterministic reduced-echelon kernel bases.
    const std::vector<CoweightVec>& am_basis() const { return am_basis_; }      // sigma = +1
    const std::vector<CoweightVec>& ag_basis() const { return ag_basis_; }      // sigma = +1 and W-fixed
    const std::vector<CoweightVec>& compact_basis() const { return tc_basis_; } // sigma = -1

    bool in_am(const CoweightVec& x) const;
    bool in_ag(const CoweightVec& x) const;
    bool in_compact_part(const CoweightVec& x) const;

private:
    void ensure_pg() const;

    int rank_ = 0;
    std::vector<IntVec> roots_;
    std::vector<IntVec> coroots_;
    Involution sigma_;
    std::map<IntVec, int> root_index_;
    std::vector<int> neg_root_;
    std::vector<int> sigma_root_;
    RootClassification cls_;
    std::vector<CoweightVec> am_basis_;
    std::vector<CoweightVec> ag_basis_;
    std::vector<CoweightVec> tc_basis_;
    mutable std::optional<RatMat> pg_weights_;   // cached projector
    mutable std::optional<RatMat> pg_coweights_;
};

// Full Weyl group with the deterministic (length, lexicographic) element order.
class WeylGroup {
public:
    WeylGroup(const RealRootDatum& datum, long long cap = kDefaultWeylCap);

    const RealRootDatum& datum() const { return *datum_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const WeylElement& operator[](int i) const { return elems_[i]; }
    const std::vector<WeylElement>& elements() const { return elems_; }

    int index_of(const IntMat& mat) const;  // -1 if absent
    int mult(int i, int j) const;           // index of elems[i] * elems[j]
    int inverse(int i) const;
    int reflection_index(int root) const;
    const std::vector<int>& simple_roots() const { return simple_roots_; }
    std::optional<int> minus_one() const;

    // Subgroup generated by reflections in the given roots; sorted element indices.
    std::vector<int> reflection_subgroup(const std::vector<int>& root_indices) const;

private:
    const RealRootDatum* datum_;
    std::vector<WeylElement> elems_;
    std::map<std::vector<long long>, int> index_;
    std::vector<int> simple_roots_;
};

struct WeylSubgroups {
    std::vector<int> w_l;  // generated by real roots
    std::vector<int> w_m;  // generated by imaginary roots
};

WeylSubgroups weyl_subgroups(const RealRootDatum& datum, const WeylGroup& weyl);

// (|R+| + dim)/2 as an exact rational; integrality is the caller's concern.
Rat q_value(long long positive_root_count, long long dim);

// Deterministic generic coweight: all root pairings nonzero.
CoweightVec generic_coweight(const RealRootDatum& datum);

}  // namespace arthur
