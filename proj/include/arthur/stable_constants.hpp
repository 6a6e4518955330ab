#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "arthur/system_view.hpp"

namespace arthur {

// Chamber-indexed table of stable discrete series constants for one regular
// character. Facet values are the constants of the wall subsystems at the
// restricted character.
struct ConstantTable {
    RatVec lambda;
    std::vector<long long> chamber_values;
    std::vector<long long> facet_values;
};

// Computes and caches constant tables over a fixed chamber complex.
//
// The constants are pinned by five facts: they depend only on the chambers of
// x and lambda; they are Weyl-equivariant; the empty system has constant 1;
// across every facet the two chamber values average to the wall-system
// constant at the restricted character; and a chamber whose closed dual cone
// contains lambda has constant 0. The builder seeds the vanishing chambers,
// propagates across facets, and then checks every residual equation, so a bad
// axiom or input fails loudly instead of producing silent wrong numbers.
class ConstantEngine {
public:
    explicit ConstantEngine(const ChamberComplex& cx) : cx_(&cx) {}

    const ChamberComplex& complex() const { return *cx_; }
    const ConstantTable& table(const RatVec& lambda);
    long long value_at(const RatVec& x, const RatVec& lambda);
    long long chamber_value(int chamber, const RatVec& lambda);

private:
    ConstantTable build(const RatVec& lambda);
    ConstantEngine& wall_engine(int hyperplane);

    const ChamberComplex* cx_;
    std::map<RatVec, ConstantTable> cache_;
    std::map<int, std::unique_ptr<ConstantEngine>> wall_engines_;
};

// Orbit sums of the constants. The plain sum over the Weyl orbit of x0 must
// equal |W|; the alternating sum, for lambda0 in the closed dual cone of x0's
// chamber, must equal (-1)^q |W| with q = (|R+| + rank)/2. Violations throw
// IdentityViolated; both require -1 in the Weyl group.
long long orbit_sum(ConstantEngine& eng, const RatVec& x0, const RatVec& lambda);
long long orbit_alternating_sum(ConstantEngine& eng, const RatVec& x0, const RatVec& lambda0);

// Same sums taken over the Weyl orbit of lambda with x0 fixed; checked to
// agree with the x-orbit values.
std::pair<long long, long long> orbit_sums_over_lambda(ConstantEngine& eng, const RatVec& x0,
                                                       const RatVec& lambda0);

// Both sides of the facet identity r * sum_C c(C) = 2 * sum_F c(F);
// throws IdentityViolated if they differ.
std::pair<long long, long long> facet_identity(ConstantEngine& eng, const RatVec& lambda);

// Verification predicates over an explicit table; used by the consistency
// suites and by the mutation-sensitivity tests.
bool verify_wall_equations(ConstantEngine& eng, const ConstantTable& t);
bool verify_dual_cone_vanishing(const ChamberComplex& cx, const ConstantTable& t);
bool verify_facet_identity(const ChamberComplex& cx, const ConstantTable& t);
bool verify_equivariance(ConstantEngine& eng, const RatVec& lambda);

// Expected value of q for the complex, exact; NonIntegralQ if fractional.
long long q_of(const ChamberComplex& cx);

}  // namespace arthur
