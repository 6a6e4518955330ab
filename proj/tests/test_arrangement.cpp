#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "arthur/arrangement.hpp"
#include "arthur/catalog.hpp"
#include "arthur/errors.hpp"
#include "arthur/lp.hpp"
#include "arthur/system_view.hpp"

using namespace arthur;

namespace {

ChamberComplex complex_for(const char* name) {
    const CatalogEntry* e = find_entry(name);
    REQUIRE(e != nullptr);
    RealRootDatum datum(e->config.raw);
    return ChamberComplex(essentialize(datum_view(datum)).view);
}

std::vector<RatVec> functionals_of(const char* name) {
    const CatalogEntry* e = find_entry(name);
    RealRootDatum datum(e->config.raw);
    std::vector<RatVec> fs;
    for (int i = 0; i < datum.num_roots(); ++i) fs.push_back(to_rat(datum.root_coords()[i]));
    return fs;
}

}  // namespace

TEST_CASE("exact LP feasibility") {
    // x >= 1, -x >= 1 infeasible.
    CHECK_FALSE(feasible_point({{Rat(1)}, {Rat(-1)}}, 1).has_value());
    // x >= 1 feasible.
    auto p = feasible_point({{Rat(1)}}, 1);
    REQUIRE(p.has_value());
    CHECK((*p)[0] >= Rat(1));
    // A sliver cone in the plane.
    auto q = feasible_point({{Rat(1), Rat(-100)}, {Rat(-1), Rat(101)}}, 2);
    REQUIRE(q.has_value());
    CHECK(rv_dot({Rat(1), Rat(-100)}, *q) >= Rat(1));
    CHECK(rv_dot({Rat(-1), Rat(101)}, *q) >= Rat(1));
    // Empty constraint set: the origin works.
    CHECK(feasible_point({}, 3).has_value());
}

TEST_CASE("chamber enumeration counts") {
    Arrangement a1 = Arrangement::build(1, functionals_of("A1"));
    CHECK(a1.size() == 1);
    CHECK(enumerate_chambers(a1).size() == 2);

    Arrangement b2 = Arrangement::build(2, functionals_of("B2"));
    CHECK(b2.size() == 4);
    CHECK(enumerate_chambers(b2).size() == 8);

    Arrangement a2 = Arrangement::build(2, functionals_of("A2"));
    CHECK(a2.size() == 3);
    CHECK(enumerate_chambers(a2).size() == 6);
}

TEST_CASE("LP enumeration agrees with the Weyl orbit") {
    for (const char* name : {"B2", "A2", "G2", "B3"}) {
        ChamberComplex cx = complex_for(name);
        auto general = enumerate_chambers(cx.arrangement());
        REQUIRE(general.size() == cx.chambers().size());
        for (size_t i = 0; i < general.size(); ++i)
            CHECK(general[i].signs == cx.chambers()[i].signs);
    }
}

TEST_CASE("facet counts match r |W| / 2") {
    struct Case {
        const char* name;
        long long facets;
    };
    for (auto [name, facets] : {Case{"A1", 1}, Case{"B2", 8}, Case{"A2", 6}, Case{"G2", 12},
                                Case{"B3", 72}}) {
        ChamberComplex cx = complex_for(name);
        CHECK_MESSAGE(static_cast<long long>(cx.facets().size()) == facets, name);
        CHECK(2 * static_cast<long long>(cx.facets().size()) ==
              static_cast<long long>(cx.rank()) * cx.weyl().size());
    }
}

TEST_CASE("every facet joins exactly two chambers differing in one sign") {
    ChamberComplex cx = complex_for("B2");
    for (const auto& f : cx.facets()) {
        const auto& a = cx.chambers()[f.chamber_pos].signs;
        const auto& b = cx.chambers()[f.chamber_neg].signs;
        int diff = 0;
        for (size_t h = 0; h < a.size(); ++h)
            if (a[h] != b[h]) ++diff;
        CHECK(diff == 1);
        CHECK(a[f.wall] == 1);
        CHECK(b[f.wall] == -1);
    }
}

TEST_CASE("chambers of a full root arrangement have rank many facets") {
    for (const char* name : {"B2", "G2", "B3"}) {
        ChamberComplex cx = complex_for(name);
        auto inc = chamber_facet_incidence(static_cast<int>(cx.chambers().size()), cx.facets());
        for (const auto& c : inc) CHECK(static_cast<int>(c.size()) == cx.rank());
    }
}

TEST_CASE("B3 long-root wall: A1xA1 system, eight facets, n = 2") {
    ChamberComplex cx = complex_for("B3");
    // Hyperplane of e1 - e2.
    int h = -1;
    for (int i = 0; i < cx.arrangement().size(); ++i)
        if (cx.arrangement().hyperplane(i).normal == RatVec{Rat(1), Rat(-1), Rat(0)}) h = i;
    REQUIRE(h >= 0);
    const WallSystem& ws = cx.wall(h);
    CHECK(ws.essential.view.num_roots() == 4);
    CHECK(ws.complex->weyl().size() == 4);  // A1 x A1
    // Coroots in the wall: +-(e1 + e2) and +-2 e3.
    std::set<RatVec> coroots;
    for (int i : ws.parent_roots) coroots.insert(cx.view().coroots[i]);
    CHECK(coroots.count(RatVec{Rat(1), Rat(1), Rat(0)}) == 1);
    CHECK(coroots.count(RatVec{Rat(0), Rat(0), Rat(2)}) == 1);

    auto counts = wall_facet_counts(cx);
    CHECK(counts[h].facets_in_wall == 8);
    CHECK(counts[h].n_alpha == 2);
    CHECK(counts[h].per_chamber_uniform);
}

TEST_CASE("B2 and A1xA1 wall data") {
    ChamberComplex b2 = complex_for("B2");
    for (const auto& w : wall_facet_counts(b2)) {
        CHECK(w.wall_weyl_order == 2);  // every wall is rank one
        CHECK(w.n_alpha == 1);
    }
    ChamberComplex aa = complex_for("A1xA1");
    for (const auto& w : wall_facet_counts(aa)) {
        CHECK(w.wall_weyl_order == 2);
        CHECK(w.n_alpha == 1);
    }
}

TEST_CASE("Weyl orbits on facets: rank many, stabilizers of order two") {
    for (const char* name : {"A1", "A1xA1", "B2", "G2", "B3"}) {
        ChamberComplex cx = complex_for(name);
        auto orb = facet_orbit_data(cx);
        CHECK_MESSAGE(orb.num_orbits == cx.rank(), name);
        for (long long s : orb.stabilizer_orders) CHECK(s == 2);
    }
}

TEST_CASE("proportional functionals are merged") {
    std::vector<RatVec> fs = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}, {Rat(-3), Rat(-3)},
                              {Rat(1), Rat(0)}};
    Arrangement arr = Arrangement::build(2, fs);
    CHECK(arr.size() == 2);
    int sign = 0;
    int h = arr.source_hyperplane(2, &sign);
    CHECK(arr.hyperplane(h).normal == RatVec{Rat(1), Rat(1)});
    CHECK(sign == -1);
}

TEST_CASE("hyperplane cap is enforced") {
    std::vector<RatVec> fs;
    for (int i = 1; i <= 10; ++i) fs.push_back({Rat(1), Rat(i)});
    CHECK_THROWS_AS((void)Arrangement::build(2, fs, 4), ArthurError);
}

TEST_CASE("dual cone and dual chamber tests") {
    ChamberComplex cx = complex_for("B2");
    RatVec lam = {Rat(2), Rat(1)};
    int cone_count = 0, chamber_count = 0;
    for (size_t c = 0; c < cx.chambers().size(); ++c) {
        if (cx.lambda_in_dual_cone(static_cast<int>(c), lam)) ++cone_count;
        if (cx.lambda_in_dual_chamber(static_cast<int>(c), lam)) ++chamber_count;
    }
    CHECK(cone_count == 3);     // the three sectors flanking the direction of lambda
    CHECK(chamber_count == 1);  // exactly one dual chamber for a regular character
}
