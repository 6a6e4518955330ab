#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arthur/catalog.hpp"
#include "arthur/errors.hpp"
#include "arthur/phi.hpp"
#include "arthur/sampling.hpp"

using namespace arthur;

namespace {

constexpr double kTol = 1e-9;

bool close(const Cplx& a, const Cplx& b, double tol = kTol) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

RealRootDatum datum_of(const char* name) { return RealRootDatum(find_entry(name)->config.raw); }

TorusElement identity_element(const RealRootDatum& d) {
    return TorusElement::elliptic(d, CoweightVec::zero(d.rank()), CoweightVec::zero(d.rank()));
}

CoefficientMap random_invariant_map(PhiEvaluator& ev, const BorelChoice& borel, Sampler& s) {
    const RealRootDatum& d = ev.datum();
    CoefficientMap m(ev.weyl().size(), 0);
    std::vector<int> wm = ev.weyl().reflection_subgroup(d.classification().imaginary_roots);
    for (int omega : kostant_reps(d, ev.weyl(), borel)) {
        long long v = s.small_int(-5, 5);
        for (int x : wm) m[ev.weyl().mult(x, omega)] = v;
    }
    return m;
}

}  // namespace

TEST_CASE("Levi discriminant") {
    RealRootDatum d = datum_of("sp4-swap");
    PhiEvaluator ev(d);
    // At gamma = 1 every factor vanishes (R is bigger than R_M).
    CHECK(std::abs(ev.levi_discriminant(identity_element(d))) == doctest::Approx(0.0));

    // Elliptic torus: empty product.
    RealRootDatum dc = datum_of("sp4-compact");
    PhiEvaluator evc(dc);
    CHECK(evc.levi_discriminant(identity_element(dc)) == Cplx(1.0, 0.0));

    // Split A1 at gamma(alpha) = e^{2t}: (1 - e^{2t})(1 - e^{-2t}).
    RealRootDatum da = datum_of("sl2-split");
    PhiEvaluator eva(da);
    TorusElement g = TorusElement::with_probe(da, CoweightVec::zero(1), CoweightVec::zero(1),
                                              Rat(1), CoweightVec(IntVec{1}));
    double e2t = std::exp(2.0);
    CHECK(close(eva.levi_discriminant(g), Cplx((1 - e2t) * (1 - 1 / e2t), 0.0)));
}

TEST_CASE("per-Borel sum equals the Kostant-collapsed sum") {
    for (const char* name : {"sl2-split", "sp4-swap", "sp4-antiswap", "gl2-split", "sl2-compact"}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
        Sampler sampler(91u);
        WeightVec lam = WeightVec::zero(d.rank());
        for (int rep = 0; rep < 8; ++rep) {
            CoefficientMap m = random_invariant_map(ev, borel, sampler);
            TorusElement g = sampler.regular_element(d, true);
            Cplx raw = ev.sum_over_borels(borel, lam, m, g);
            Cplx wcf = ev.sum_over_kostant(borel, lam, m, g);
            CHECK_MESSAGE(close(raw, wcf), name);
        }
    }
}

TEST_CASE("trivial coefficient maps") {
    RealRootDatum d = datum_of("sp4-swap");
    PhiEvaluator ev(d);
    BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
    Sampler sampler(15u);
    TorusElement g = sampler.regular_element(d, true);
    CoefficientMap zero(ev.weyl().size(), 0);
    CHECK(std::abs(ev.sum_over_borels(borel, WeightVec::zero(2), zero, g)) ==
          doctest::Approx(0.0));

    // Split torus at gamma = 1 would be irregular; the raw sum demands
    // regularity.
    RealRootDatum ds = datum_of("sp4-split");
    PhiEvaluator evs(ds);
    BorelChoice bs = compatible_borels(ds, evs.weyl(), evs.am(), 0).front();
    CoefficientMap ones(evs.weyl().size(), 1);
    CHECK_THROWS_AS(
        (void)evs.sum_over_borels(bs, WeightVec::zero(2), ones, identity_element(ds)),
        ArthurError);

    // The collapsed sum handles it: each V is one-dimensional on M = T and
    // the signs cancel pairwise.
    Cplx v = evs.sum_over_kostant(bs, WeightVec::zero(2), ones, identity_element(ds));
    CHECK(std::abs(v) == doctest::Approx(0.0));
}

TEST_CASE("single-Borel coefficient map on split A1 gives the bare character") {
    // With M = T the parabolic is the Borel itself, so the term at the
    // identity reduces to gamma(lambda_B).
    RealRootDatum d = datum_of("sl2-split");
    PhiEvaluator ev(d);
    BorelChoice b = make_borel(d, {d.root_index({2})});
    CoefficientMap m(ev.weyl().size(), 0);
    m[0] = 1;
    WeightVec lam(IntVec{3});
    Sampler sampler(9u);
    for (int rep = 0; rep < 5; ++rep) {
        TorusElement g = sampler.regular_element(d, true);
        CHECK(close(ev.sum_over_borels(b, lam, m, g), g.eval(lam)));
    }
}

TEST_CASE("coefficient maps must be W_M-invariant for the collapsed sum") {
    RealRootDatum d = datum_of("sp4-swap");
    PhiEvaluator ev(d);
    BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
    CoefficientMap bad(ev.weyl().size(), 0);
    bad[0] = 1;  // not constant on W_M-translates
    Sampler sampler(3u);
    TorusElement g = sampler.regular_element(d, true);
    CHECK_THROWS_AS((void)ev.sum_over_kostant(borel, WeightVec::zero(2), bad, g), ArthurError);
}

TEST_CASE("discrete-series coefficients") {
    // Elliptic torus: no real roots, all coefficients 1.
    RealRootDatum dc = datum_of("sp4-compact");
    PhiEvaluator evc(dc);
    BorelChoice bc = compatible_borels(dc, evc.weyl(), evc.am(), 0).front();
    CoefficientMap nc = evc.ds_coefficients(bc, 0, CoweightVec::zero(2), WeightVec::zero(2));
    for (long long v : nc) CHECK(v == 1);

    // Split A1 with trivial weight: 2 for the representative whose projected
    // shift is negative on the probe, 0 for the other.
    RealRootDatum da = datum_of("sl2-split");
    PhiEvaluator eva(da);
    BorelChoice ba = compatible_borels(da, eva.weyl(), eva.am(), 0).front();
    CoweightVec x0 = eva.am().from_am(eva.am().l_chambers()[0].witness);
    CoefficientMap na = eva.ds_coefficients(ba, 0, x0, WeightVec::zero(1));
    std::vector<long long> sorted = na;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<long long>{0, 2});
    // The 2 sits on the representative moving rho to the negative side.
    WeightVec rho = rho_of(da, ba.positive);
    for (int w = 0; w < eva.weyl().size(); ++w) {
        Rat p = pairing(eva.weyl()[w].apply(rho), x0);
        CHECK(na[w] == (p < Rat(0) ? 2 : 0));
    }

    // W_M-translate invariance on sp4-swap for every Borel.
    RealRootDatum dw = datum_of("sp4-swap");
    PhiEvaluator evw(dw);
    BorelChoice bw = compatible_borels(dw, evw.weyl(), evw.am(), 0).front();
    CoweightVec xw = evw.am().from_am(evw.am().l_chambers()[0].witness);
    CoefficientMap nw = evw.ds_coefficients(bw, 0, xw, WeightVec::zero(2));
    CHECK(evw.is_wm_invariant(nw));
    std::vector<int> wm = evw.weyl().reflection_subgroup(dw.classification().imaginary_roots);
    for (int w = 0; w < evw.weyl().size(); ++w)
        for (int x : wm) CHECK(nw[evw.weyl().mult(x, w)] == nw[w]);
}

TEST_CASE("factored sum equals the modulus times the coefficient sum") {
    for (const char* name : {"sl2-split", "sp4-swap", "sp4-antiswap", "gl2-split"}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
        CoweightVec x0 = ev.am().from_am(ev.am().l_chambers()[0].witness);
        Sampler sampler(55u);
        WeightVec lam = WeightVec::zero(d.rank());
        for (int rep = 0; rep < 5; ++rep) {
            CoweightVec u = sampler.in_span(d.compact_basis(), d.rank());
            CoweightVec s = sampler.in_span(d.ag_basis(), d.rank());
            Rat t(1, 1 + static_cast<long long>(sampler.small_int(0, 6)));
            TorusElement g = TorusElement::with_probe(d, u, s, t, x0);
            bool regular = true;
            for (int i = 0; i < d.num_roots(); ++i)
                if (!d.is_imaginary(i) && g.eval_is_one(d.root(i))) regular = false;
            if (!regular) continue;

            Cplx factored = ev.sum_factored(borel, 0, lam, g);
            CoefficientMap n = ev.ds_coefficients(borel, 0, x0, lam);
            Cplx collapsed = ev.sum_over_kostant(borel, lam, n, g);
            double dp = modulus_delta_P_sqrt(d, g, borel.nilradical);
            CHECK_MESSAGE(close(factored, dp * collapsed), name);
        }
    }
}

TEST_CASE("inner sums approach (-1)^{q(L)} |W_L|") {
    RealRootDatum d = datum_of("sp4-swap");
    PhiEvaluator ev(d);
    BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
    CoweightVec x0 = ev.am().from_am(ev.am().l_chambers()[0].witness);
    TorusElement g = TorusElement::with_probe(d, CoweightVec::zero(2), CoweightVec::zero(2),
                                              Rat(1, 100000), x0);
    std::vector<Cplx> inners;
    (void)ev.sum_factored(borel, 0, WeightVec::zero(2), g, &inners);
    double expect = (ev.q_l() % 2 == 0 ? 1.0 : -1.0) * 2.0;
    for (const Cplx& inner : inners) CHECK(std::abs(inner - Cplx(expect, 0.0)) < 1e-3);
}

TEST_CASE("elliptic values on the extreme tori") {
    // Split torus, gamma = 1, any E: (-1)^{q(G)} |W|.
    struct SplitCase {
        const char* name;
        double expect;
    };
    for (auto [name, expect] : {SplitCase{"sl2-split", -2}, SplitCase{"sp4-split", -8},
                                SplitCase{"b3-split", 48}, SplitCase{"g2-split", 12}}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
        PhiResult r = ev.phi_elliptic(borel, 0, WeightVec::zero(d.rank()), identity_element(d));
        CHECK_MESSAGE(close(r.value, Cplx(expect, 0.0)), name);
        CHECK(r.wlm_size == 1);
        // Nontrivial E: same value at gamma = 1.
        WeightVec lam = WeightVec::zero(d.rank());
        for (int i : borel.positive) lam = lam + d.root(i);
        PhiResult r2 = ev.phi_elliptic(borel, 0, lam, identity_element(d));
        CHECK_MESSAGE(close(r2.value, Cplx(expect, 0.0)), name);
    }

    // Elliptic torus: the trace itself.
    RealRootDatum dc = datum_of("sp4-compact");
    PhiEvaluator evc(dc);
    BorelChoice bc = compatible_borels(dc, evc.weyl(), evc.am(), 0).front();
    Subsystem full = full_subsystem(dc, bc);
    WeightVec lam = WeightVec::zero(2);
    for (int i : bc.positive) lam = lam + dc.root(i);
    Sampler sampler(123u);
    for (int rep = 0; rep < 10; ++rep) {
        TorusElement g = sampler.elliptic_element(dc);
        PhiResult r = evc.phi_elliptic(bc, 0, lam, g);
        Cplx tr = evc.chars().trace(full, lam, g);
        CHECK(close(r.value, tr));
        CHECK(std::abs(r.value.imag()) <= kTol * (1.0 + std::abs(r.value)));
    }
}

TEST_CASE("sp4-swap headline value and PhiResult structure") {
    RealRootDatum d = datum_of("sp4-swap");
    PhiEvaluator ev(d);
    BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
    PhiResult r = ev.phi_elliptic(borel, 0, WeightVec::zero(2), identity_element(d));
    CHECK(close(r.value, Cplx(4.0, 0.0)));
    CHECK(r.q_l == 1);
    CHECK(r.wl_order == 2);
    CHECK(r.wlm_size == 2);
    // value = (-1)^{q(L)} |W_L| sum of contributions.
    Cplx sum(0, 0);
    for (const auto& c : r.contributions) sum += static_cast<double>(c.sign) * c.trace;
    double factor = (r.q_l % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(r.wl_order);
    CHECK(close(r.value, factor * sum));
    // The two contributions have dimensions 1 and 3.
    std::vector<double> dims;
    for (const auto& c : r.contributions) dims.push_back(c.trace.real());
    std::sort(dims.begin(), dims.end());
    CHECK(dims[0] == doctest::Approx(1.0));
    CHECK(dims[1] == doctest::Approx(3.0));
}

TEST_CASE("choice independence of the elliptic value") {
    for (const char* name : {"sl2-split", "sp4-swap", "sp4-antiswap", "gl2-split"}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        Sampler sampler(41u);
        WeightVec lam = WeightVec::zero(d.rank());
        for (int i = 0; i < d.num_roots(); ++i)
            if (d.is_imaginary(i)) continue;
        TorusElement g = sampler.elliptic_element(d);

        // Across every L-chamber and every compatible Borel.
        Cplx first;
        bool have = false;
        for (size_t lc = 0; lc < ev.am().l_chambers().size(); ++lc) {
            for (const BorelChoice& b : compatible_borels(d, ev.weyl(), ev.am(), static_cast<int>(lc))) {
                PhiResult r = ev.phi_elliptic(b, static_cast<int>(lc), lam, g);
                if (!have) {
                    first = r.value;
                    have = true;
                } else {
                    CHECK_MESSAGE(close(r.value, first), name);
                }
            }
        }
    }
}

TEST_CASE("limit probes converge at the documented rate") {
    std::vector<Rat> ts = {Rat(1, 10), Rat(1, 100), Rat(1, 1000), Rat(1, 10000)};

    // sl2-split: limit -2.
    RealRootDatum da = datum_of("sl2-split");
    PhiEvaluator eva(da);
    BorelChoice ba = compatible_borels(da, eva.weyl(), eva.am(), 0).front();
    LimitReport ra = eva.limit_probe(ba, 0, WeightVec::zero(1), identity_element(da),
                                     eva.am().from_am(eva.am().l_chambers()[0].witness), ts);
    CHECK(close(ra.target, Cplx(-2.0, 0.0)));
    CHECK(ra.converged);

    // sp4-swap: limit 4 at gamma = 1 and at nontrivial parameters.
    RealRootDatum dw = datum_of("sp4-swap");
    PhiEvaluator evw(dw);
    BorelChoice bw = compatible_borels(dw, evw.weyl(), evw.am(), 0).front();
    CoweightVec xw = evw.am().from_am(evw.am().l_chambers()[0].witness);
    LimitReport rw = evw.limit_probe(bw, 0, WeightVec::zero(2), identity_element(dw), xw, ts);
    CHECK(close(rw.target, Cplx(4.0, 0.0)));
    CHECK(rw.converged);

    Sampler sampler(67u);
    WeightVec two_rho = WeightVec::zero(2);
    for (int i : bw.positive) two_rho = two_rho + dw.root(i);
    for (int k = 1; k <= 3; ++k) {
        TorusElement gc = sampler.elliptic_element(dw);
        LimitReport r = evw.limit_probe(bw, 0, Rat(k) * two_rho, gc, xw, ts);
        CHECK(r.converged);
    }

    // Elliptic torus: the probe values equal the trace exactly at every t.
    RealRootDatum dc = datum_of("sp4-compact");
    PhiEvaluator evc(dc);
    BorelChoice bc = compatible_borels(dc, evc.weyl(), evc.am(), 0).front();
    WeightVec lamc = WeightVec::zero(2);
    for (int i : bc.positive) lamc = lamc + dc.root(i);
    LimitReport rc = evc.limit_probe(bc, 0, lamc, identity_element(dc),
                                     CoweightVec::zero(2), ts);
    CHECK(rc.converged);
    for (const auto& p : rc.points) CHECK(p.abs_error <= 1e-12);
}

TEST_CASE("normalization link between the discriminant and the modulus") {
    for (const char* name : {"sl2-split", "sp4-swap", "gl2-split", "sp4-compact"}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
        Sampler sampler(143u);
        for (int rep = 0; rep < 20; ++rep) {
            TorusElement g = sampler.regular_element(d, true);
            CHECK_MESSAGE(ev.dmg_normalization_check(borel, g, kTol), name);
        }
    }
}

TEST_CASE("normalization link pinned instances") {
    // Elliptic torus: both sides are empty products.
    RealRootDatum dc = datum_of("sp4-compact");
    PhiEvaluator evc(dc);
    BorelChoice bc = compatible_borels(dc, evc.weyl(), evc.am(), 0).front();
    Sampler sampler(19u);
    TorusElement g = sampler.elliptic_element(dc);
    CHECK(std::abs(evc.levi_discriminant(g) - Cplx(1, 0)) < 1e-12);
    CHECK(modulus_delta_P_sqrt(dc, g, bc.nilradical) == doctest::Approx(1.0));

    // Split A1 at gamma(alpha) = e^{2t}: both sides are |e^t - e^{-t}|.
    RealRootDatum da = datum_of("sl2-split");
    PhiEvaluator eva(da);
    BorelChoice ba = make_borel(da, {da.root_index({2})});
    TorusElement gp = TorusElement::with_probe(da, CoweightVec::zero(1), CoweightVec::zero(1),
                                               Rat(2, 5), CoweightVec(IntVec{1}));
    double t = 0.4;
    double expect = std::abs(std::exp(t) - std::exp(-t));
    CHECK(std::sqrt(std::abs(eva.levi_discriminant(gp))) == doctest::Approx(expect));
    CHECK(modulus_delta_P_sqrt(da, gp, ba.nilradical) *
              std::abs(delta_product(da, gp, ba.nilradical)) ==
          doctest::Approx(expect));
    CHECK(eva.dmg_normalization_check(ba, gp, kTol));
}

TEST_CASE("capability guards") {
    // a2-split has no -1 in W(R_L) on a_M/a_G.
    RealRootDatum d = datum_of("a2-split");
    PhiEvaluator ev(d);
    BorelChoice borel = compatible_borels(d, ev.weyl(), ev.am(), 0).front();
    CHECK_FALSE(ev.minus_one_in_wl());
    try {
        ev.phi_elliptic(borel, 0, WeightVec::zero(2), identity_element(d));
        FAIL("expected MinusOneNotInWeylGroup");
    } catch (const ArthurError& e) {
        CHECK(e.kind() == Err::MinusOneNotInWeylGroup);
    }

    // Elliptic evaluation rejects probe elements.
    RealRootDatum dw = datum_of("sp4-swap");
    PhiEvaluator evw(dw);
    BorelChoice bw = compatible_borels(dw, evw.weyl(), evw.am(), 0).front();
    CoweightVec xw = evw.am().from_am(evw.am().l_chambers()[0].witness);
    TorusElement probe = TorusElement::with_probe(dw, CoweightVec::zero(2), CoweightVec::zero(2),
                                                  Rat(1, 10), xw);
    CHECK_THROWS_AS((void)evw.phi_elliptic(bw, 0, WeightVec::zero(2), probe), ArthurError);
}

TEST_CASE("q(L) values across the catalog") {
    struct Case {
        const char* name;
        long long q;
    };
    for (auto [name, q] : {Case{"sl2-split", 1}, Case{"sp4-split", 3}, Case{"sp4-swap", 1},
                           Case{"sp4-compact", 0}, Case{"gl2-split", 1}, Case{"b3-split", 6},
                           Case{"g2-split", 4}}) {
        RealRootDatum d = datum_of(name);
        PhiEvaluator ev(d);
        CHECK_MESSAGE(ev.q_l() == q, name);
    }
}
