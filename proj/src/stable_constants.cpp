#include "arthur/stable_constants.hpp"

#include <deque>

#include "arthur/errors.hpp"

namespace arthur {

const ConstantTable& ConstantEngine::table(const RatVec& lambda) {
    auto it = cache_.find(lambda);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(lambda, build(lambda)).first->second;
}

ConstantEngine& ConstantEngine::wall_engine(int hyperplane) {
    auto it = wall_engines_.find(hyperplane);
    if (it != wall_engines_.end()) return *it->second;
    const WallSystem& ws = cx_->wall(hyperplane);
    return *wall_engines_.emplace(hyperplane, std::make_unique<ConstantEngine>(*ws.complex))
                .first->second;
}

ConstantTable ConstantEngine::build(const RatVec& lambda) {
    const ChamberComplex& cx = *cx_;
    ConstantTable t;
    t.lambda = lambda;

    if (cx.view().empty()) {
        t.chamber_values = {1};
        return t;
    }

    // Regularity: nonzero pairing against every coroot.
    for (const auto& cr : cx.view().coroots)
        if (rv_dot(lambda, cr).is_zero())
            fail(Err::IrregularCharacter, "character vanishes on a coroot");

    // Facet constants from the wall subsystems at the restricted character.
    t.facet_values.resize(cx.facets().size());
    for (size_t f = 0; f < cx.facets().size(); ++f) {
        const Facet& facet = cx.facets()[f];
        const WallSystem& ws = cx.wall(facet.wall);
        ConstantEngine& sub = wall_engine(facet.wall);
        if (ws.essential.view.dim == 0 && ws.essential.view.empty()) {
            t.facet_values[f] = 1;
            continue;
        }
        RatVec wp = ws.wall_point(facet.witness);
        RatVec wl = ws.wall_functional(lambda);
        RatVec ep = ws.essential.point_proj.apply(wp);
        RatVec el = ws.essential.funct_restrict.apply(wl);
        t.facet_values[f] = sub.value_at(ep, el);
    }

    // Seed the chambers whose closed dual cone contains lambda, then
    // propagate across facets.
    int n = static_cast<int>(cx.chambers().size());
    std::vector<long long> val(n, 0);
    std::vector<char> known(n, 0);
    std::deque<int> queue;
    for (int c = 0; c < n; ++c)
        if (cx.lambda_in_dual_cone(c, lambda)) {
            val[c] = 0;
            known[c] = 1;
            queue.push_back(c);
        }
    auto inconsistent = [&](const char* what) -> void {
        if (!cx.weyl().minus_one())
            fail(Err::MinusOneNotInWeylGroup,
                 std::string(what) + " (the system lacks -1 in its Weyl group)");
        fail(Err::RecursionInconsistent, what);
    };
    if (queue.empty()) inconsistent("no vanishing chamber to seed the recursion");

    auto incidence = chamber_facet_incidence(n, cx.facets());
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int f : incidence[c]) {
            const Facet& facet = cx.facets()[f];
            int other = facet.chamber_pos == c ? facet.chamber_neg : facet.chamber_pos;
            long long v = 2 * t.facet_values[f] - val[c];
            if (known[other]) {
                if (val[other] != v) inconsistent("facet equation conflict during propagation");
            } else {
                val[other] = v;
                known[other] = 1;
                queue.push_back(other);
            }
        }
    }

    for (int c = 0; c < n; ++c) {
        if (!known[c]) fail(Err::InternalError, "chamber graph is disconnected");
        // Values are even integers; from rank three on they can be negative
        // (B3 forces a -8), so only parity is enforced.
        if (val[c] % 2 != 0) inconsistent("constant is odd");
    }
    // Residual equations: every facet, including the ones not used above.
    for (size_t f = 0; f < cx.facets().size(); ++f) {
        const Facet& facet = cx.facets()[f];
        if (val[facet.chamber_pos] + val[facet.chamber_neg] != 2 * t.facet_values[f])
            inconsistent("residual facet equation violated");
    }

    t.chamber_values = std::move(val);
    return t;
}

long long ConstantEngine::value_at(const RatVec& x, const RatVec& lambda) {
    if (cx_->view().empty()) return 1;
    int c = cx_->chamber_of(x);
    return table(lambda).chamber_values[c];
}

long long ConstantEngine::chamber_value(int chamber, const RatVec& lambda) {
    if (cx_->view().empty()) return 1;
    return table(lambda).chamber_values[chamber];
}

long long q_of(const ChamberComplex& cx) {
    Rat q = q_value(cx.view().num_roots() / 2, cx.rank());
    if (!q.is_integer()) fail(Err::NonIntegralQ, "q = " + q.str() + " is not an integer");
    return q.to_int();
}

namespace {
void require_minus_one(const ChamberComplex& cx) {
    if (!cx.weyl().minus_one())
        fail(Err::MinusOneNotInWeylGroup, "-1 is not in the Weyl group of this system");
}
}  // namespace

long long orbit_sum(ConstantEngine& eng, const RatVec& x0, const RatVec& lambda) {
    const ChamberComplex& cx = eng.complex();
    require_minus_one(cx);
    if (cx.view().empty()) return 1;
    int c0 = cx.chamber_of(x0);
    const ConstantTable& t = eng.table(lambda);
    long long sum = 0;
    for (int w = 0; w < cx.weyl().size(); ++w) sum += t.chamber_values[cx.chamber_action(w, c0)];
    if (sum != cx.weyl().size())
        fail(Err::IdentityViolated, "orbit sum " + std::to_string(sum) + " != |W| = " +
                                        std::to_string(cx.weyl().size()));
    return sum;
}

long long orbit_alternating_sum(ConstantEngine& eng, const RatVec& x0, const RatVec& lambda0) {
    const ChamberComplex& cx = eng.complex();
    require_minus_one(cx);
    if (cx.view().empty()) return 1;
    int c0 = cx.chamber_of(x0);
    if (!cx.lambda_in_dual_chamber(c0, lambda0))
        fail(Err::Lambda0NotInDualCone, "character is not in the dual chamber of the base chamber");
    const ConstantTable& t = eng.table(lambda0);
    long long sum = 0;
    for (int w = 0; w < cx.weyl().size(); ++w)
        sum += cx.weyl()[w].sign * t.chamber_values[cx.chamber_action(w, c0)];
    long long expected = (q_of(cx) % 2 == 0 ? 1 : -1) * cx.weyl().size();
    if (sum != expected)
        fail(Err::IdentityViolated, "alternating orbit sum " + std::to_string(sum) +
                                        " != " + std::to_string(expected));
    return sum;
}

std::pair<long long, long long> orbit_sums_over_lambda(ConstantEngine& eng, const RatVec& x0,
                                                       const RatVec& lambda0) {
    const ChamberComplex& cx = eng.complex();
    require_minus_one(cx);
    if (cx.view().empty()) return {1, 1};
    int c0 = cx.chamber_of(x0);
    if (!cx.lambda_in_dual_chamber(c0, lambda0))
        fail(Err::Lambda0NotInDualCone, "character is not in the dual chamber of the base chamber");
    long long plain = 0, alternating = 0;
    for (int w = 0; w < cx.weyl().size(); ++w) {
        RatVec wl = cx.weyl()[w].funct_mat.apply(lambda0);
        long long v = eng.table(wl).chamber_values[c0];
        plain += v;
        alternating += cx.weyl()[w].sign * v;
    }
    long long expected_alt = (q_of(cx) % 2 == 0 ? 1 : -1) * cx.weyl().size();
    if (plain != cx.weyl().size() || alternating != expected_alt)
        fail(Err::IdentityViolated, "orbit sums over the character orbit differ from the point orbit");
    return {plain, alternating};
}

std::pair<long long, long long> facet_identity(ConstantEngine& eng, const RatVec& lambda) {
    const ChamberComplex& cx = eng.complex();
    const ConstantTable& t = eng.table(lambda);
    long long lhs = 0, rhs = 0;
    for (long long v : t.chamber_values) lhs += v;
    lhs *= cx.rank();
    for (long long v : t.facet_values) rhs += v;
    rhs *= 2;
    if (lhs != rhs)
        fail(Err::IdentityViolated,
             "facet identity " + std::to_string(lhs) + " != " + std::to_string(rhs));
    return {lhs, rhs};
}

bool verify_wall_equations(ConstantEngine& eng, const ConstantTable& t) {
    const ChamberComplex& cx = eng.complex();
    for (size_t f = 0; f < cx.facets().size(); ++f) {
        const Facet& facet = cx.facets()[f];
        if (t.chamber_values[facet.chamber_pos] + t.chamber_values[facet.chamber_neg] !=
            2 * t.facet_values[f])
            return false;
    }
    return true;
}

bool verify_dual_cone_vanishing(const ChamberComplex& cx, const ConstantTable& t) {
    for (size_t c = 0; c < cx.chambers().size(); ++c)
        if (cx.lambda_in_dual_cone(static_cast<int>(c), t.lambda) && t.chamber_values[c] != 0)
            return false;
    return true;
}

bool verify_facet_identity(const ChamberComplex& cx, const ConstantTable& t) {
    long long lhs = 0, rhs = 0;
    for (long long v : t.chamber_values) lhs += v;
    lhs *= cx.rank();
    for (long long v : t.facet_values) rhs += v;
    rhs *= 2;
    return lhs == rhs;
}

bool verify_equivariance(ConstantEngine& eng, const RatVec& lambda) {
    const ChamberComplex& cx = eng.complex();
    if (cx.view().empty()) return true;
    const ConstantTable& t = eng.table(lambda);
    for (int w = 0; w < cx.weyl().size(); ++w) {
        RatVec wl = cx.weyl()[w].funct_mat.apply(lambda);
        const ConstantTable& tw = eng.table(wl);
        for (size_t c = 0; c < cx.chambers().size(); ++c)
            if (tw.chamber_values[cx.chamber_action(w, static_cast<int>(c))] != t.chamber_values[c])
                return false;
    }
    return true;
}

}  // namespace arthur
