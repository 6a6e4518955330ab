#include "arthur/phi.hpp"

#include <algorithm>
#include <cmath>

#include "arthur/errors.hpp"

namespace arthur {

PhiEvaluator::PhiEvaluator(const RealRootDatum& datum, long long weyl_cap)
    : datum_(&datum), weyl_(datum, weyl_cap), am_(datum, weyl_), chars_(datum) {}

void PhiEvaluator::ensure_real() {
    if (real_cx_) return;
    real_view_ = real_root_view(*datum_);
    real_cx_ = std::make_unique<ChamberComplex>(real_view_->view);
    real_eng_ = std::make_unique<ConstantEngine>(*real_cx_);
}

const ChamberComplex& PhiEvaluator::real_complex() {
    ensure_real();
    return *real_cx_;
}

ConstantEngine& PhiEvaluator::real_engine() {
    ensure_real();
    return *real_eng_;
}

Cplx PhiEvaluator::levi_discriminant(const TorusElement& gamma) const {
    Cplx prod(1.0, 0.0);
    for (int i = 0; i < datum_->num_roots(); ++i) {
        if (datum_->is_imaginary(i)) continue;
        prod *= Cplx(1.0, 0.0) - gamma.eval(datum_->root(i));
    }
    return prod;
}

bool PhiEvaluator::gamma_regular(const TorusElement& gamma) const {
    for (int i = 0; i < datum_->num_roots(); ++i)
        if (gamma.eval_is_one(datum_->root(i))) return false;
    return true;
}

bool PhiEvaluator::is_wm_invariant(const CoefficientMap& m) const {
    std::vector<int> wm = weyl_.reflection_subgroup(datum_->classification().imaginary_roots);
    for (int w = 0; w < weyl_.size(); ++w)
        for (int wm_el : wm)
            if (m[weyl_.mult(wm_el, w)] != m[w]) return false;
    return true;
}

WeightVec PhiEvaluator::shifted_weight(const BorelChoice& borel, const WeightVec& lambda_B,
                                       int omega) const {
    WeightVec rho = rho_of(*datum_, borel.positive);
    WeightVec mu = weyl_[omega].apply(lambda_B + rho) - rho;
    for (const auto& x : mu.c)
        if (!x.is_integer())
            fail(Err::InternalError, "shifted weight left the weight lattice");
    return mu;
}

Cplx PhiEvaluator::sum_over_borels(const BorelChoice& borel, const WeightVec& lambda_B,
                                   const CoefficientMap& m, const TorusElement& gamma) {
    if (!gamma_regular(gamma)) fail(Err::IrregularElement, "per-Borel sum needs a regular element");
    if (static_cast<int>(m.size()) != weyl_.size())
        fail(Err::ValidationError, "coefficient map must cover the whole Weyl group");
    Cplx delta_p = delta_product(*datum_, gamma, borel.nilradical);
    Cplx sum(0.0, 0.0);
    for (int w = 0; w < weyl_.size(); ++w) {
        if (m[w] == 0) continue;
        std::vector<int> moved;
        moved.reserve(borel.positive.size());
        for (int i : borel.positive)
            moved.push_back(datum_->root_index(weyl_[w].mat.apply(datum_->root_coords()[i])));
        Cplx delta_wb = delta_product(*datum_, gamma, moved);
        Cplx numer = gamma.eval(weyl_[w].apply(lambda_B));
        sum += static_cast<double>(m[w]) * delta_p * numer / delta_wb;
    }
    return sum;
}

Cplx PhiEvaluator::sum_over_kostant(const BorelChoice& borel, const WeightVec& lambda_B,
                                    const CoefficientMap& m, const TorusElement& gamma) {
    if (static_cast<int>(m.size()) != weyl_.size())
        fail(Err::ValidationError, "coefficient map must cover the whole Weyl group");
    if (!is_wm_invariant(m))
        fail(Err::ValidationError, "coefficient map is not invariant under W_M translation");
    Subsystem msys = m_subsystem(*datum_, borel);
    Cplx sum(0.0, 0.0);
    for (int omega : kostant_reps(*datum_, weyl_, borel)) {
        if (m[omega] == 0) continue;
        WeightVec mu = shifted_weight(borel, lambda_B, omega);
        sum += static_cast<double>(m[omega]) * static_cast<double>(weyl_[omega].sign) *
               chars_.trace(msys, mu, gamma);
    }
    return sum;
}

CoefficientMap PhiEvaluator::ds_coefficients(const BorelChoice& borel, int lchamber,
                                             const CoweightVec& x0, const WeightVec& lambda_B) {
    ensure_real();
    if (am_.l_chamber_of_point(am_.am_coords(x0)) != lchamber)
        fail(Err::ValidationError, "probe point is not interior to the chosen L-chamber");

    WeightVec lambda0 = datum_->project_pG(lambda_B);
    WeightVec shift = lambda_B + rho_of(*datum_, borel.positive) - lambda0;

    int chamber = -1;
    if (!real_view_->view.empty()) {
        RatVec ep = real_view_->point_proj.apply(x0.c);
        chamber = real_cx_->chamber_of(ep);
    }

    CoefficientMap out(weyl_.size(), 1);
    if (real_view_->view.empty()) return out;  // no real roots: rank-zero constants

    for (int w = 0; w < weyl_.size(); ++w) {
        RatVec lam = real_view_->funct_restrict.apply(weyl_[w].apply(shift).c);
        try {
            out[w] = real_eng_->chamber_value(chamber, lam);
        } catch (const ArthurError& e) {
            if (e.kind() == Err::IrregularCharacter)
                fail(Err::DegenerateProjection,
                     "projected weight is irregular for the real-root system");
            throw;
        }
    }
    if (!is_wm_invariant(out))
        fail(Err::InternalError, "discrete-series coefficients not W_M-invariant");
    return out;
}

Cplx PhiEvaluator::sum_factored(const BorelChoice& borel, int lchamber, const WeightVec& lambda_B,
                                const TorusElement& gamma, std::vector<Cplx>* inner_out) {
    if (gamma.t() <= Rat(0))
        fail(Err::ValidationError, "factored sum needs a positive probe scale");
    // Only the roots outside R_M enter the factors here; the character side
    // is built for arbitrary elements, so imaginary-root irregularity (which
    // is unavoidable at gamma_c = 1) is fine.
    for (int i = 0; i < datum_->num_roots(); ++i)
        if (!datum_->is_imaginary(i) && gamma.eval_is_one(datum_->root(i)))
            fail(Err::IrregularElement, "element is irregular outside the Levi");

    WlmData wlm = wlm_reps(*datum_, weyl_, am_, borel, lchamber, lambda_B);
    CoefficientMap n = ds_coefficients(borel, lchamber, gamma.x0(), lambda_B);
    WeightVec lam_rho = lambda_B + rho_of(*datum_, borel.positive);
    Subsystem msys = m_subsystem(*datum_, borel);

    double dp_sqrt = modulus_delta_P_sqrt(*datum_, gamma, borel.nilradical);
    if (inner_out) inner_out->clear();
    Cplx sum(0.0, 0.0);
    for (int omega : wlm.reps) {
        Cplx inner(0.0, 0.0);
        for (int wl : wlm.wl) {
            WeightVec chi = chi_weight(weyl_, wl, omega, lam_rho);
            inner += static_cast<double>(weyl_[wl].sign) * gamma.eval(chi) *
                     static_cast<double>(n[weyl_.mult(wl, omega)]);
        }
        if (inner_out) inner_out->push_back(inner);
        WeightVec mu = shifted_weight(borel, lambda_B, omega);
        sum += static_cast<double>(weyl_[omega].sign) * chars_.trace(msys, mu, gamma) * inner;
    }
    return dp_sqrt * sum;
}

bool PhiEvaluator::minus_one_in_wl() {
    ensure_real();
    long long span_dim = real_view_->view.dim;
    long long quotient_dim = static_cast<long long>(datum_->am_basis().size()) -
                             static_cast<long long>(datum_->ag_basis().size());
    if (span_dim != quotient_dim) return false;
    return real_cx_->weyl().minus_one().has_value();
}

long long PhiEvaluator::q_l() {
    ensure_real();
    long long pos = static_cast<long long>(real_view_->view.num_roots()) / 2;
    long long dim = static_cast<long long>(datum_->am_basis().size()) -
                    static_cast<long long>(datum_->ag_basis().size());
    Rat q = q_value(pos, dim);
    if (!q.is_integer()) fail(Err::NonIntegralQ, "q(L) = " + q.str() + " is not an integer");
    return q.to_int();
}

PhiResult PhiEvaluator::phi_elliptic(const BorelChoice& borel, int lchamber,
                                     const WeightVec& lambda_B, const TorusElement& gamma) {
    if (!gamma.is_elliptic())
        fail(Err::ValidationError, "elliptic evaluation needs an elliptic element");
    if (!minus_one_in_wl())
        fail(Err::MinusOneNotInWeylGroup,
             "-1 is not in the Weyl group of the real-root system on a_M/a_G");

    PhiResult res;
    res.q_l = q_l();
    WlmData wlm = wlm_reps(*datum_, weyl_, am_, borel, lchamber, lambda_B);
    res.wl_order = static_cast<long long>(wlm.wl.size());
    res.wlm_size = static_cast<long long>(wlm.reps.size());

    Subsystem msys = m_subsystem(*datum_, borel);
    Cplx sum(0.0, 0.0);
    for (int omega : wlm.reps) {
        PhiContribution contrib;
        contrib.omega = omega;
        contrib.sign = weyl_[omega].sign;
        contrib.highest_weight = shifted_weight(borel, lambda_B, omega);
        contrib.trace = chars_.trace(msys, contrib.highest_weight, gamma);
        sum += static_cast<double>(contrib.sign) * contrib.trace;
        res.contributions.push_back(std::move(contrib));
    }
    double factor = (res.q_l % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(res.wl_order);
    res.value = factor * sum;
    return res;
}

LimitReport PhiEvaluator::limit_probe(const BorelChoice& borel, int lchamber,
                                      const WeightVec& lambda_B, const TorusElement& gamma_c,
                                      const CoweightVec& x0, const std::vector<Rat>& t_seq) {
    if (!gamma_c.is_elliptic())
        fail(Err::ValidationError, "limit probe needs an elliptic base point");
    LimitReport rep;
    PhiResult target = phi_elliptic(borel, lchamber, lambda_B, gamma_c);
    rep.target = target.value;

    // Normalize the probe direction so every exponent that enters the
    // factored sum is at most |t|: largest pairing against the roots and
    // against the Weyl orbit of lambda_B + rho_B. The probe scales then
    // parametrize the ray uniformly across systems and weights.
    CoweightVec dir = x0;
    {
        Rat m;
        auto bump = [&m](Rat p) {
            if (p < Rat(0)) p = -p;
            if (p > m) m = p;
        };
        for (int i = 0; i < datum_->num_roots(); ++i) bump(pairing(datum_->root(i), dir));
        WeightVec lam_rho = lambda_B + rho_of(*datum_, borel.positive);
        for (int w = 0; w < weyl_.size(); ++w) bump(pairing(weyl_[w].apply(lam_rho), dir));
        if (!m.is_zero()) dir = (Rat(1) / m) * dir;
    }

    std::vector<Rat> ts = t_seq;
    std::sort(ts.begin(), ts.end(), [](const Rat& a, const Rat& b) { return b < a; });
    for (const auto& t : ts) {
        if (t <= Rat(0)) fail(Err::ValidationError, "probe scales must be positive");
        TorusElement g = TorusElement::with_probe(*datum_, gamma_c.u(), gamma_c.s(), t, dir);
        LimitPoint pt;
        pt.t = t;
        pt.value = sum_factored(borel, lchamber, lambda_B, g);
        pt.abs_error = std::abs(pt.value - rep.target);
        rep.points.push_back(std::move(pt));
    }

    double atol = 1e-9 * (1.0 + std::abs(rep.target));
    // Rate constant from the two largest t: the larger of the two raw ratios
    // and their Richardson extrapolation, so both signs of the second-order
    // term are covered.
    double rate = 0.0;
    for (size_t i = 0; i < rep.points.size() && i < 2; ++i)
        rate = std::max(rate, rep.points[i].abs_error / rep.points[i].t.to_double());
    if (rep.points.size() >= 2) {
        double t1 = rep.points[0].t.to_double(), t2 = rep.points[1].t.to_double();
        double r1 = rep.points[0].abs_error / t1, r2 = rep.points[1].abs_error / t2;
        // Secant extrapolation of the ratio to t = 0, with a relative
        // curvature allowance of order t2.
        if (t1 != t2) rate = std::max(rate, r2 + (r2 - r1) * t2 / (t1 - t2));
        rate *= 1.0 + t2;
    }
    rep.fitted_rate = rate;
    rep.converged = true;
    for (size_t i = 2; i < rep.points.size(); ++i)
        if (rep.points[i].abs_error > rate * rep.points[i].t.to_double() + atol)
            rep.converged = false;
    return rep;
}

bool PhiEvaluator::dmg_normalization_check(const BorelChoice& borel, const TorusElement& gamma,
                                           double tol) {
    if (!gamma_regular(gamma))
        fail(Err::IrregularElement, "normalization check needs a regular element");
    double lhs = std::sqrt(std::abs(levi_discriminant(gamma)));
    double rhs = modulus_delta_P_sqrt(*datum_, gamma, borel.nilradical) *
                 std::abs(delta_product(*datum_, gamma, borel.nilradical));
    return std::abs(lhs - rhs) <= tol * (1.0 + std::abs(rhs));
}

}  // namespace arthur
