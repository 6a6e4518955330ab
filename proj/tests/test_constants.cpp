#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "arthur/catalog.hpp"
#include "arthur/errors.hpp"
#include "arthur/sampling.hpp"
#include "arthur/stable_constants.hpp"
#include "arthur/system_view.hpp"

using namespace arthur;

namespace {

ChamberComplex complex_for(const char* name) {
    const CatalogEntry* e = find_entry(name);
    REQUIRE(e != nullptr);
    RealRootDatum datum(e->config.raw);
    return ChamberComplex(essentialize(datum_view(datum)).view);
}

std::string sign_string(const std::vector<int8_t>& s) {
    std::string out;
    for (int8_t x : s) out += x > 0 ? '+' : (x < 0 ? '-' : '0');
    return out;
}

}  // namespace

TEST_CASE("rank one: 2 on the negative side, 0 on the positive") {
    // This orientation is what forces the sign (-1)^q |W| in the alternating
    // sum; pinned here on the catalog A1.
    ChamberComplex cx = complex_for("A1");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(3)};
    CHECK(eng.value_at({Rat(-5)}, lam) == 2);
    CHECK(eng.value_at({Rat(7)}, lam) == 0);
    const ConstantTable& t = eng.table(lam);
    REQUIRE(t.facet_values.size() == 1);
    CHECK(t.facet_values[0] == 1);  // rank-zero wall
}

TEST_CASE("rank zero returns 1") {
    RootSystemView empty;
    empty.dim = 0;
    ChamberComplex cx(empty);
    ConstantEngine eng(cx);
    CHECK(eng.value_at({}, {}) == 1);
}

TEST_CASE("B2 table at lambda = (2,1), frozen by-hand values") {
    // Hyperplanes in canonical order: (0,1), (1,-1), (1,0), (1,1). Chamber
    // values derived by seeding the vanishing sectors and propagating the
    // wall averages around the circle, double-checked against the orbit sums.
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    const ConstantTable& t = eng.table({Rat(2), Rat(1)});

    // One witness per 45-degree sector, counterclockwise from 0.
    struct Sector {
        RatVec point;
        long long value;
    };
    const Sector sectors[] = {
        {{Rat(2), Rat(1)}, 0},   {{Rat(1), Rat(2)}, 0},   {{Rat(-1), Rat(2)}, 0},
        {{Rat(-2), Rat(1)}, 4},  {{Rat(-2), Rat(-1)}, 0}, {{Rat(-1), Rat(-2)}, 4},
        {{Rat(1), Rat(-2)}, 0},  {{Rat(2), Rat(-1)}, 0},
    };
    for (const auto& s : sectors) CHECK(eng.value_at(s.point, {Rat(2), Rat(1)}) == s.value);

    // Facet constants: 2 exactly on the rays at 135, 180, 225, 270 degrees.
    const std::map<std::string, long long> ray_values = {
        {"(-1,1)", 2}, {"(-1,0)", 2}, {"(-1,-1)", 2}, {"(0,-1)", 2},
        {"(1,0)", 0},  {"(1,1)", 0},  {"(0,1)", 0},   {"(1,-1)", 0},
    };
    int matched = 0;
    for (size_t f = 0; f < cx.facets().size(); ++f) {
        // Identify the ray by the primitive direction of the witness.
        RatVec w = cx.facets()[f].witness;
        Rat scale;
        for (const auto& x : w)
            if (!x.is_zero()) {
                Rat a = x < Rat(0) ? -x : x;
                if (scale.is_zero() || a < scale) scale = a;
            }
        RatVec prim = rv_scale(Rat(1) / scale, w);
        std::string key = rv_str(prim);
        auto it = ray_values.find(key);
        if (it != ray_values.end()) {
            CHECK_MESSAGE(t.facet_values[f] == it->second, key);
            ++matched;
        }
    }
    CHECK(matched == 8);
}

TEST_CASE("A1xA1 table: 4 on the doubly negative quadrant, product rule") {
    ChamberComplex cx = complex_for("A1xA1");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(1), Rat(1)};
    CHECK(eng.value_at({Rat(-1), Rat(-2)}, lam) == 4);
    CHECK(eng.value_at({Rat(1), Rat(-2)}, lam) == 0);
    CHECK(eng.value_at({Rat(-1), Rat(2)}, lam) == 0);
    CHECK(eng.value_at({Rat(1), Rat(2)}, lam) == 0);

    // Orthogonal-product multiplicativity against the rank-one factors.
    ChamberComplex a1 = complex_for("A1");
    ConstantEngine e1(a1);
    for (long long x : {-3, 2})
        for (long long y : {-1, 5}) {
            long long lhs = eng.value_at({Rat(x), Rat(y)}, lam);
            long long rhs = e1.value_at({Rat(x)}, {Rat(1)}) * e1.value_at({Rat(y)}, {Rat(1)});
            CHECK(lhs == rhs);
        }

    // Facet identity: 2 * sum_C = 2 * sum_F here (rank 2).
    auto [lhs, rhs] = facet_identity(eng, lam);
    CHECK(lhs == 8);
    CHECK(rhs == 8);
}

TEST_CASE("orbit sums on the catalog systems") {
    struct Case {
        const char* name;
        long long order;
        long long alt;
    };
    const Case cases[] = {
        {"A1", 2, -2}, {"A1xA1", 4, 4}, {"B2", 8, -8}, {"C2", 8, -8}, {"G2", 12, 12},
    };
    for (const auto& c : cases) {
        ChamberComplex cx = complex_for(c.name);
        ConstantEngine eng(cx);
        Sampler sampler(7u);
        for (int rep = 0; rep < 3; ++rep) {
            RatVec lam = sampler.regular_functional(cx);
            RatVec x0;
            for (size_t ch = 0; ch < cx.chambers().size(); ++ch)
                if (cx.lambda_in_dual_chamber(static_cast<int>(ch), lam)) {
                    x0 = cx.chambers()[ch].witness;
                    break;
                }
            REQUIRE_MESSAGE(!x0.empty(), c.name);
            CHECK_MESSAGE(orbit_sum(eng, x0, lam) == c.order, c.name);
            CHECK_MESSAGE(orbit_alternating_sum(eng, x0, lam) == c.alt, c.name);
            auto [s, a] = orbit_sums_over_lambda(eng, x0, lam);
            CHECK(s == c.order);
            CHECK(a == c.alt);
        }
    }
}

TEST_CASE("B2 orbit sums at the pinned character") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(2), Rat(1)};
    RatVec x0 = {Rat(3), Rat(1)};  // interior of the 0..45 degree sector
    CHECK(orbit_sum(eng, x0, lam) == 8);
    CHECK(orbit_alternating_sum(eng, x0, lam) == -8);
    auto [lhs, rhs] = facet_identity(eng, lam);
    CHECK(lhs == 16);
    CHECK(rhs == 16);
}

TEST_CASE("facet identity on every Prop-1 catalog system") {
    for (const char* name : {"A1", "A1xA1", "B2", "G2", "B3"}) {
        ChamberComplex cx = complex_for(name);
        ConstantEngine eng(cx);
        Sampler sampler(11u);
        RatVec lam = sampler.regular_functional(cx);
        auto [lhs, rhs] = facet_identity(eng, lam);
        CHECK_MESSAGE(lhs == rhs, name);
    }
}

TEST_CASE("Weyl equivariance of the tables") {
    for (const char* name : {"B2", "A1xA1", "G2"}) {
        ChamberComplex cx = complex_for(name);
        ConstantEngine eng(cx);
        Sampler sampler(13u);
        RatVec lam = sampler.regular_functional(cx);
        CHECK_MESSAGE(verify_equivariance(eng, lam), name);
    }
}

TEST_CASE("B3 contains a negative constant but satisfies every identity") {
    ChamberComplex cx = complex_for("B3");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(7), Rat(5), Rat(2)};
    const ConstantTable& t = eng.table(lam);
    long long min_v = 0;
    for (long long v : t.chamber_values) min_v = std::min(min_v, v);
    CHECK(min_v == -8);
    for (long long v : t.chamber_values) CHECK(v % 2 == 0);
    CHECK(verify_wall_equations(eng, t));
    CHECK(verify_dual_cone_vanishing(cx, t));
    CHECK(verify_facet_identity(cx, t));
    RatVec x0;
    for (size_t ch = 0; ch < cx.chambers().size(); ++ch)
        if (cx.lambda_in_dual_chamber(static_cast<int>(ch), lam)) x0 = cx.chambers()[ch].witness;
    CHECK(orbit_sum(eng, x0, lam) == 48);
    CHECK(orbit_alternating_sum(eng, x0, lam) == 48);  // q = 6
}

TEST_CASE("irregular characters are rejected") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    // (1,1) pairs to zero with the coroot of e1 - e2.
    CHECK_THROWS_AS((void)eng.table({Rat(1), Rat(1)}), ArthurError);
    try {
        (void)eng.table({Rat(1), Rat(1)});
    } catch (const ArthurError& e) {
        CHECK(e.kind() == Err::IrregularCharacter);
    }
}

TEST_CASE("point on a hyperplane is rejected") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    CHECK_THROWS_AS((void)eng.value_at({Rat(1), Rat(0)}, {Rat(2), Rat(1)}), ArthurError);
}

TEST_CASE("systems without -1 are refused in the orbit sums") {
    ChamberComplex cx = complex_for("A2");
    ConstantEngine eng(cx);
    try {
        orbit_sum(eng, {Rat(5), Rat(1)}, {Rat(2), Rat(1)});
        FAIL("expected MinusOneNotInWeylGroup");
    } catch (const ArthurError& e) {
        CHECK(e.kind() == Err::MinusOneNotInWeylGroup);
    }
}

TEST_CASE("alternating sum demands the dual-chamber condition") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(2), Rat(1)};
    // x0 in the 45..90 sector: lambda is in its dual cone but not its dual
    // chamber, so the precondition must reject it.
    try {
        orbit_alternating_sum(eng, {Rat(1), Rat(3)}, lam);
        FAIL("expected Lambda0NotInDualCone");
    } catch (const ArthurError& e) {
        CHECK(e.kind() == Err::Lambda0NotInDualCone);
    }
}

TEST_CASE("mutation sensitivity: perturbed tables fail verification") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(2), Rat(1)};
    ConstantTable t = eng.table(lam);

    ConstantTable bumped = t;
    bumped.chamber_values[3] += 2;
    bool bump_caught = !verify_wall_equations(eng, bumped) || !verify_facet_identity(cx, bumped);
    CHECK(bump_caught);

    ConstantTable flipped = t;
    for (auto& v : flipped.chamber_values) v = -v;
    bool flip_caught = !verify_dual_cone_vanishing(cx, flipped) ||
                       !verify_wall_equations(eng, flipped);
    CHECK(flip_caught);

    // Swapping a single facet constant's orientation breaks the residual
    // wall equations.
    ConstantTable facet_bumped = t;
    facet_bumped.facet_values[0] += 2;
    CHECK_FALSE(verify_wall_equations(eng, facet_bumped));
}

TEST_CASE("value depends only on the chamber of the point") {
    ChamberComplex cx = complex_for("B2");
    ConstantEngine eng(cx);
    RatVec lam = {Rat(2), Rat(1)};
    // Three different interior points of the 135..180 sector.
    CHECK(eng.value_at({Rat(-2), Rat(1)}, lam) == 4);
    CHECK(eng.value_at({Rat(-3), Rat(1)}, lam) == 4);
    CHECK(eng.value_at({Rat(-5, 2), Rat(1, 3)}, lam) == 4);
}

TEST_CASE("sign string rendering is stable") {
    ChamberComplex cx = complex_for("A1");
    CHECK(sign_string(cx.chambers()[0].signs) == "-");
    CHECK(sign_string(cx.chambers()[1].signs) == "+");
}
