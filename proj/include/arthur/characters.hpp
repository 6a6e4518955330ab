#pragma once

#include <complex>
#include <map>
#include <vector>

#include "arthur/am_geometry.hpp"
#include "arthur/root_datum.hpp"

namespace arthur {

using Cplx = std::complex<double>;

// Point of T(R) in the coordinates used throughout: a compact parameter u in
// the (-1)-eigenspace of sigma, a split central parameter s in a_G, and an
// optional probe term t*x0 with x0 in a_M. Evaluation on a weight is
// exp(2 pi i <l,u>) * exp(<l,s>) * exp(t <l,x0>). With t = 0 the element lies
// in the maximal elliptic subtorus.
class TorusElement {
public:
    static TorusElement elliptic(const RealRootDatum& datum, CoweightVec u, CoweightVec s);
    static TorusElement with_probe(const RealRootDatum& datum, CoweightVec u, CoweightVec s,
                                   Rat t, CoweightVec x0);

    const CoweightVec& u() const { return u_; }
    const CoweightVec& s() const { return s_; }
    const Rat& t() const { return t_; }
    const CoweightVec& x0() const { return x0_; }
    bool is_elliptic() const { return t_.is_zero(); }

    Cplx eval(const WeightVec& lambda) const;
    // Exact test for eval(lambda) == 1.
    bool eval_is_one(const WeightVec& lambda) const;
    // Exact absolute value of the evaluation, as the exponent of e.
    Rat log_modulus(const WeightVec& lambda) const;
    TorusElement inverse() const;
    TorusElement at_probe_scale(const Rat& t) const;

private:
    TorusElement() = default;
    CoweightVec u_, s_, x0_;
    Rat t_;
};

// A positive system of the datum together with the induced data of the
// standard parabolic containing it: R_M+ and the nilradical roots R_N.
struct BorelChoice {
    std::vector<int> positive;
    std::vector<int> m_positive;
    std::vector<int> nilradical;
    std::vector<char> positive_mask;  // per root index

    bool is_positive(int root) const { return positive_mask[root]; }
};

BorelChoice make_borel(const RealRootDatum& datum, std::vector<int> positive_indices);
BorelChoice borel_from_point(const RealRootDatum& datum, const CoweightVec& generic);
// All Borels compatible with the L-chamber: R_N from a P-chamber inside it,
// R_M+ ranging over the positive systems of the imaginary roots.
std::vector<BorelChoice> compatible_borels(const RealRootDatum& datum, const WeylGroup& weyl,
                                           const AmGeometry& am, int lchamber);

WeightVec rho_of(const RealRootDatum& datum, const std::vector<int>& positive);

// Products of (1 - gamma(alpha)^{-1}). IrregularElement when a factor vanishes.
Cplx delta_product(const RealRootDatum& datum, const TorusElement& gamma,
                   const std::vector<int>& roots);
// Modulus character of the parabolic and its square root, evaluated exactly
// in the exponent.
double modulus_delta_P(const RealRootDatum& datum, const TorusElement& gamma,
                       const std::vector<int>& nilradical);
double modulus_delta_P_sqrt(const RealRootDatum& datum, const TorusElement& gamma,
                            const std::vector<int>& nilradical);

// Checks Delta_{w*B} / Delta_B = sign(w) * gamma(rho_B - w rho_B).
bool delta_quotient_identity(const RealRootDatum& datum, const WeylElement& w,
                             const BorelChoice& borel, const TorusElement& gamma, double tol);

// Kostant representatives: {w in W : w^{-1} R_M+ is positive}, in group order.
std::vector<int> kostant_reps(const RealRootDatum& datum, const WeylGroup& weyl,
                              const BorelChoice& borel);

struct WlmData {
    std::vector<int> reps;   // one Weyl index per W_L-orbit on the Kostant set
    WeightVec lambda0;       // central character as a weight, p_G(lambda_B)
    std::vector<int> wl;     // W_L element indices
    std::vector<int> wm;     // W_M element indices
};

// Per-orbit representatives whose shifted weight restricted to a_M is
// strictly dominant for the chosen L-chamber.
WlmData wlm_reps(const RealRootDatum& datum, const WeylGroup& weyl, const AmGeometry& am,
                 const BorelChoice& borel, int lchamber, const WeightVec& lambda_B);

// Weight of the one-dimensional twist relating the representations attached
// to w_L * omega and omega.
WeightVec chi_weight(const WeylGroup& weyl, int w_l, int omega, const WeightVec& lambda_plus_rho);

// Root subsystem of the datum (such as R_M) with a chosen positive half.
struct Subsystem {
    std::vector<int> roots;
    std::vector<int> positive;
};

Subsystem m_subsystem(const RealRootDatum& datum, const BorelChoice& borel);
Subsystem full_subsystem(const RealRootDatum& datum, const BorelChoice& borel);

// Weight multiplicities of the irreducible with highest weight mu, by
// Freudenthal recursion over the subsystem. NotDominant / NotIntegral on a
// bad highest weight.
struct WeightTable {
    WeightVec mu;
    std::map<RatVec, long long> mult;  // keyed by weight coordinates
    long long dimension = 0;
};

WeightTable weight_multiplicities(const RealRootDatum& datum, const Subsystem& sub,
                                  const WeightVec& mu);

Rat weyl_dimension(const RealRootDatum& datum, const Subsystem& sub, const WeightVec& mu);

// Memoizing trace evaluator; optionally persists tables under
// ARTHUR_PHI_CACHE_DIR.
class CharacterCache {
public:
    explicit CharacterCache(const RealRootDatum& datum) : datum_(&datum) {}
    const WeightTable& table(const Subsystem& sub, const WeightVec& mu);
    Cplx trace(const Subsystem& sub, const WeightVec& mu, const TorusElement& gamma);

private:
    const RealRootDatum* datum_;
    std::map<std::pair<std::vector<int>, RatVec>, WeightTable> cache_;
};

// Weyl character formula quotient at a regular element; the independent
// cross-check of the multiplicity tables.
Cplx wcf_quotient(const RealRootDatum& datum, const WeylGroup& weyl, const Subsystem& sub,
                  const WeightVec& mu, const TorusElement& gamma);

// Longest element of the subsystem's Weyl group (maps positives to negatives).
int longest_element(const RealRootDatum& datum, const WeylGroup& weyl, const Subsystem& sub);

}  // namespace arthur
