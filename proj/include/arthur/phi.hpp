#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "arthur/am_geometry.hpp"
#include "arthur/characters.hpp"
#include "arthur/root_datum.hpp"
#include "arthur/stable_constants.hpp"
#include "arthur/system_view.hpp"

namespace arthur {

// Integer coefficients indexed by Weyl elements (equivalently Borels w * B).
using CoefficientMap = std::vector<long long>;

struct PhiContribution {
    int omega = 0;  // Weyl index
    int sign = 1;
    WeightVec highest_weight;
    Cplx trace;
};

struct PhiResult {
    Cplx value;
    std::vector<PhiContribution> contributions;
    long long q_l = 0;
    long long wl_order = 0;
    long long wlm_size = 0;
};

struct LimitPoint {
    Rat t;
    Cplx value;
    double abs_error = 0.0;
};

struct LimitReport {
    Cplx target;
    std::vector<LimitPoint> points;
    double fitted_rate = 0.0;
    bool converged = false;
};

// Evaluator for one datum: assembles the discriminant, the per-Borel sum and
// its collapsed forms, the discrete-series coefficients, and the elliptic
// value with its limit cross-checks.
class PhiEvaluator {
public:
    explicit PhiEvaluator(const RealRootDatum& datum, long long weyl_cap = kDefaultWeylCap);

    const RealRootDatum& datum() const { return *datum_; }
    const WeylGroup& weyl() const { return weyl_; }
    const AmGeometry& am() const { return am_; }
    CharacterCache& chars() { return chars_; }
    const ChamberComplex& real_complex();
    ConstantEngine& real_engine();

    // det(1 - Ad(gamma)) on the quotient by the Levi: the product of
    // (1 - gamma(a)) over roots outside R_M.
    Cplx levi_discriminant(const TorusElement& gamma) const;

    bool is_wm_invariant(const CoefficientMap& m) const;
    // omega(lambda_B + rho_B) - rho_B; always a lattice weight.
    WeightVec shifted_weight(const BorelChoice& borel, const WeightVec& lambda_B, int omega) const;

    // Per-Borel sum: sum_w m(w) DeltaP(g) (w lambda_B)(g) / Delta_{w*B}(g).
    // Requires a regular element.
    Cplx sum_over_borels(const BorelChoice& borel, const WeightVec& lambda_B,
                         const CoefficientMap& m, const TorusElement& gamma);
    // The same sum collapsed over Kostant representatives via the character
    // formula; valid at irregular elements, needs a W_M-invariant map.
    Cplx sum_over_kostant(const BorelChoice& borel, const WeightVec& lambda_B,
                          const CoefficientMap& m, const TorusElement& gamma);

    // Stable discrete-series coefficients n(gamma, w*B) for a probe point in
    // the interior of the L-chamber.
    CoefficientMap ds_coefficients(const BorelChoice& borel, int lchamber, const CoweightVec& x0,
                                   const WeightVec& lambda_B);

    // The factored sum with the modulus normalization: the outer sum runs
    // over the per-orbit representatives, the inner over W_L. inner_out
    // receives the inner sums per representative when non-null.
    Cplx sum_factored(const BorelChoice& borel, int lchamber, const WeightVec& lambda_B,
                      const TorusElement& gamma, std::vector<Cplx>* inner_out = nullptr);

    // The elliptic evaluation: (-1)^{q(L)} |W_L| sum over representatives of
    // sign * trace. Requires an elliptic element and -1 in the Weyl group of
    // the real-root system on a_M/a_G.
    PhiResult phi_elliptic(const BorelChoice& borel, int lchamber, const WeightVec& lambda_B,
                           const TorusElement& gamma);

    // Evaluates the factored sum along gamma_c exp(s + t x0) for decreasing t
    // and compares against the elliptic value; the error bound constant is
    // fitted from the two largest t.
    LimitReport limit_probe(const BorelChoice& borel, int lchamber, const WeightVec& lambda_B,
                            const TorusElement& gamma_c, const CoweightVec& x0,
                            const std::vector<Rat>& t_seq);

    // |D_M^G(gamma)|^{1/2} = deltaP^{1/2}(gamma) |DeltaP(gamma)| at a regular
    // element.
    bool dmg_normalization_check(const BorelChoice& borel, const TorusElement& gamma, double tol);

    bool minus_one_in_wl();
    long long q_l();  // (|R_L+| + dim(a_M/a_G)) / 2, checked integral
    bool gamma_regular(const TorusElement& gamma) const;

private:
    void ensure_real();

    const RealRootDatum* datum_;
    WeylGroup weyl_;
    AmGeometry am_;
    CharacterCache chars_;
    std::optional<EssentialView> real_view_;
    std::unique_ptr<ChamberComplex> real_cx_;
    std::unique_ptr<ConstantEngine> real_eng_;
};

}  // namespace arthur
