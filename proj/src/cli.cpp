#include "arthur/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arthur/catalog.hpp"
#include "arthur/errors.hpp"
#include "arthur/phi.hpp"
#include "arthur/sampling.hpp"
#include "arthur/stable_constants.hpp"

namespace arthur {

namespace {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& r) { return r.str(); }

Json rvec_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

Json complex_json(const Cplx& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json signs_json(const std::vector<int8_t>& s) {
    std::string out;
    for (int8_t x : s) out += x > 0 ? '+' : (x < 0 ? '-' : '0');
    return out;
}

struct Options {
    std::string config;
    std::string system;
    std::string lambda;
    std::string lambda_B;
    std::string gamma_u;
    std::string gamma_s;
    std::string borel;
    std::string t_seq;
    std::string out_file;
    std::string format = "json";
    double tol = 1e-9;
    long long weyl_cap = kDefaultWeylCap;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    if (!cur.empty() || !s.empty()) out.push_back(cur);
    return out;
}

RatVec parse_rat_csv(const std::string& s, int expect_dim) {
    RatVec out;
    for (const auto& tok : split_csv(s)) out.push_back(Rat::parse(tok));
    if (expect_dim >= 0 && static_cast<int>(out.size()) != expect_dim)
        fail(Err::ValidationError, "expected " + std::to_string(expect_dim) + " coordinates");
    return out;
}

std::vector<int> parse_int_csv(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split_csv(s)) out.push_back(static_cast<int>(std::stoll(tok)));
    return out;
}

DatumConfig resolve_config(const Options& opt) {
    if (!opt.config.empty()) {
        std::ifstream probe(opt.config);
        if (probe) return load_config_file(opt.config);
        const CatalogEntry* e = find_entry(opt.config);
        if (e) return e->config;
        fail(Err::ParseError, "no config file or catalog entry named " + opt.config);
    }
    if (!opt.system.empty()) {
        const CatalogEntry* e = find_entry(opt.system);
        if (!e) fail(Err::ValidationError, "unknown system " + opt.system);
        return e->config;
    }
    fail(Err::ValidationError, "a --config or --system is required");
}

// Deterministic regular character for a complex: small integer vectors in a
// fixed scan order.
RatVec default_lambda(const ChamberComplex& cx) {
    if (cx.view().empty()) return {};
    Sampler s(20240901u);
    return s.regular_functional(cx);
}

struct CommandContext {
    Options opt;
    Json report;
};

void emit(CommandContext& ctx, std::ostream& out) {
    if (ctx.opt.format == "text") {
        // Flat key: value rendering, one line per top-level entry.
        for (auto& [k, v] : ctx.report.items()) out << k << ": " << v.dump() << "\n";
    } else {
        out << ctx.report.dump(2) << "\n";
    }
    if (!ctx.opt.out_file.empty()) {
        std::ofstream f(ctx.opt.out_file);
        f << ctx.report.dump(2) << "\n";
    }
}

int cmd_catalog(CommandContext& ctx) {
    Json entries = Json::array();
    for (const auto& e : builtin_catalog()) {
        RealRootDatum d(e.config.raw);
        entries.push_back(Json{{"name", e.config.name},
                               {"rank", e.config.raw.rank},
                               {"num_roots", static_cast<int>(e.config.raw.roots.size())},
                               {"has_minus_one_in_WL", e.has_minus_one_in_wl},
                               {"has_discrete_series_torus", e.has_discrete_series_torus},
                               {"prop1_eligible", e.prop1_eligible}});
    }
    ctx.report = Json{{"command", "catalog"}, {"entries", entries}};
    return 0;
}

int cmd_validate(CommandContext& ctx) {
    DatumConfig cfg;
    try {
        cfg = resolve_config(ctx.opt);
    } catch (const ArthurError& e) {
        if (e.kind() == Err::ValidationError && !ctx.opt.config.empty()) {
            // Reload without construction to collect the violation list.
            std::ifstream in(ctx.opt.config);
            if (in) {
                std::ostringstream ss;
                ss << in.rdbuf();
                nlohmann::json j = nlohmann::json::parse(ss.str(), nullptr, false);
                if (!j.is_discarded() && j.contains("roots")) {
                    RawDatum raw;
                    raw.rank = j.value("rank", 0);
                    for (const auto& r : j["roots"]) {
                        IntVec v;
                        for (const auto& x : r) v.push_back(x.get<long long>());
                        raw.roots.push_back(v);
                    }
                    if (j.contains("coroots"))
                        for (const auto& r : j["coroots"]) {
                            IntVec v;
                            for (const auto& x : r) v.push_back(x.get<long long>());
                            raw.coroots.push_back(v);
                        }
                    if (j.contains("sigma"))
                        for (const auto& r : j["sigma"]) {
                            IntVec v;
                            for (const auto& x : r) v.push_back(x.get<long long>());
                            raw.sigma.push_back(v);
                        }
                    ValidationReport rep = RealRootDatum::validate(raw);
                    Json viols = Json::array();
                    for (const auto& v : rep.violations)
                        viols.push_back(Json{{"kind", v.kind}, {"detail", v.detail}});
                    ctx.report = Json{{"command", "validate"}, {"ok", false}, {"violations", viols}};
                    return 2;
                }
            }
        }
        throw;
    }
    ValidationReport rep = RealRootDatum::validate(cfg.raw);
    Json viols = Json::array();
    for (const auto& v : rep.violations)
        viols.push_back(Json{{"kind", v.kind}, {"detail", v.detail}});
    ctx.report = Json{{"command", "validate"},
                      {"name", cfg.name},
                      {"ok", rep.ok},
                      {"violations", viols}};
    return rep.ok ? 0 : 2;
}

int cmd_chambers(CommandContext& ctx) {
    DatumConfig cfg = resolve_config(ctx.opt);
    RealRootDatum datum(cfg.raw);
    WeylGroup weyl(datum, ctx.opt.weyl_cap);
    AmGeometry am(datum, weyl);

    Json pcs = Json::array();
    for (size_t pc = 0; pc < am.p_chambers().size(); ++pc) {
        std::vector<int> rn = am.parabolic_of_p(static_cast<int>(pc));
        Json rn_json = Json::array();
        for (int i : rn) rn_json.push_back(rv_str(to_rat(datum.root_coords()[i])));
        pcs.push_back(Json{{"signs", signs_json(am.p_chambers()[pc].signs)},
                           {"witness", rvec_json(am.p_chambers()[pc].witness)},
                           {"l_chamber", am.l_chamber_of_p(static_cast<int>(pc))},
                           {"nilradical", rn_json}});
    }
    Json lcs = Json::array();
    for (size_t lc = 0; lc < am.l_chambers().size(); ++lc)
        lcs.push_back(Json{{"signs", signs_json(am.l_chambers()[lc].signs)},
                           {"witness", rvec_json(am.l_chambers()[lc].witness)}});

    EssentialView full = essentialize(datum_view(datum));
    ChamberComplex cx(full.view, ctx.opt.weyl_cap);
    auto walls = wall_facet_counts(cx);
    auto orbits = facet_orbit_data(cx);
    Json wall_json = Json::array();
    for (const auto& w : walls)
        wall_json.push_back(Json{{"hyperplane", w.hyperplane},
                                 {"facets", w.facets_in_wall},
                                 {"wall_weyl_order", w.wall_weyl_order},
                                 {"n_alpha", w.n_alpha}});
    bool stab2 = true;
    for (long long s : orbits.stabilizer_orders)
        if (s != 2) stab2 = false;

    ctx.report = Json{{"command", "chambers"},
                      {"name", cfg.name},
                      {"a_M_dim", am.dim()},
                      {"p_chambers", pcs},
                      {"l_chambers", lcs},
                      {"system",
                       Json{{"rank", cx.rank()},
                            {"weyl_order", cx.weyl().size()},
                            {"chambers", static_cast<int>(cx.chambers().size())},
                            {"facets", static_cast<int>(cx.facets().size())},
                            {"facet_count_expected",
                             cx.rank() * static_cast<long long>(cx.weyl().size()) / 2},
                            {"walls", wall_json},
                            {"facet_orbits", orbits.num_orbits},
                            {"all_stabilizers_order_2", stab2}}}};
    return 0;
}

int cmd_constants(CommandContext& ctx) {
    DatumConfig cfg = resolve_config(ctx.opt);
    RealRootDatum datum(cfg.raw);
    EssentialView full = essentialize(datum_view(datum));
    ChamberComplex cx(full.view, ctx.opt.weyl_cap);
    if (!cx.weyl().minus_one())
        fail(Err::MinusOneNotInWeylGroup, "constants need -1 in the Weyl group");
    ConstantEngine eng(cx);

    RatVec lam = ctx.opt.lambda.empty() ? default_lambda(cx)
                                        : parse_rat_csv(ctx.opt.lambda, cx.rank());
    const ConstantTable& t = eng.table(lam);
    Json chambers = Json::array();
    for (size_t c = 0; c < cx.chambers().size(); ++c)
        chambers.push_back(
            Json{{"signs", signs_json(cx.chambers()[c].signs)}, {"value", t.chamber_values[c]}});
    Json facets = Json::array();
    for (size_t f = 0; f < cx.facets().size(); ++f)
        facets.push_back(Json{{"wall", cx.facets()[f].wall},
                              {"signs", signs_json(cx.facets()[f].signs)},
                              {"value", t.facet_values[f]}});
    auto [lhs, rhs] = facet_identity(eng, lam);
    ctx.report = Json{{"command", "constants"}, {"name", cfg.name},   {"lambda", rvec_json(lam)},
                      {"chambers", chambers},   {"facets", facets},   {"facet_identity", Json::array({lhs, rhs})},
                      {"pass", lhs == rhs}};
    return 0;
}

int cmd_prop1(CommandContext& ctx) {
    DatumConfig cfg = resolve_config(ctx.opt);
    RealRootDatum datum(cfg.raw);
    EssentialView full = essentialize(datum_view(datum));
    ChamberComplex cx(full.view, ctx.opt.weyl_cap);
    ConstantEngine eng(cx);

    RatVec lam = ctx.opt.lambda.empty() ? default_lambda(cx)
                                        : parse_rat_csv(ctx.opt.lambda, cx.rank());
    // Base point: a chamber whose dual cone contains lambda.
    RatVec x0;
    if (!cx.view().empty()) {
        int c0 = -1;
        for (size_t c = 0; c < cx.chambers().size(); ++c)
            if (cx.lambda_in_dual_chamber(static_cast<int>(c), lam)) {
                c0 = static_cast<int>(c);
                break;
            }
        if (c0 < 0) fail(Err::Lambda0NotInDualCone, "no chamber has this character in its dual chamber");
        x0 = cx.chambers()[c0].witness;
    }

    long long sum = orbit_sum(eng, x0, lam);
    long long alt = orbit_alternating_sum(eng, x0, lam);
    long long expected_alt = (q_of(cx) % 2 == 0 ? 1 : -1) * cx.weyl().size();
    ctx.report = Json{{"command", "prop1"},
                      {"system", cfg.name},
                      {"lambda", rvec_json(lam)},
                      {"sum", sum},
                      {"alt_sum", alt},
                      {"expected", Json::array({cx.weyl().size(), expected_alt})},
                      {"pass", true}};
    return 0;
}

struct PhiInputs {
    RealRootDatum datum;
    WeightVec lambda_B;
    int lchamber = 0;
    std::optional<BorelChoice> borel;

    explicit PhiInputs(const DatumConfig& cfg) : datum(cfg.raw), lambda_B(WeightVec::zero(cfg.raw.rank)) {}
};

PhiInputs resolve_phi_inputs(const Options& opt, const DatumConfig& cfg, PhiEvaluator& ev) {
    PhiInputs in(cfg);
    if (!opt.lambda_B.empty()) {
        RatVec v = parse_rat_csv(opt.lambda_B, cfg.raw.rank);
        in.lambda_B = WeightVec(v);
    } else if (cfg.lambda_B) {
        in.lambda_B = WeightVec(*cfg.lambda_B);
    }
    std::vector<int> borel_idx;
    if (!opt.borel.empty())
        borel_idx = parse_int_csv(opt.borel);
    else if (cfg.borel)
        borel_idx = *cfg.borel;
    if (!borel_idx.empty()) {
        in.borel = make_borel(in.datum, borel_idx);
        // The chamber must be the one this Borel's nilradical points at.
        std::vector<int> rl;
        for (int i : in.borel->nilradical)
            if (in.datum.is_real(i)) rl.push_back(i);
        for (size_t lc = 0; lc < ev.am().l_chambers().size(); ++lc) {
            if (ev.am().positive_reals_of_l(static_cast<int>(lc)) == rl) {
                in.lchamber = static_cast<int>(lc);
                break;
            }
        }
    } else {
        // Default: the first compatible Borel (scanning the L-chambers in
        // order) for which lambda_B is dominant. The elliptic value does not
        // depend on the choice.
        for (size_t lc = 0; !in.borel && lc < ev.am().l_chambers().size(); ++lc) {
            for (auto& b : compatible_borels(in.datum, ev.weyl(), ev.am(), static_cast<int>(lc))) {
                bool dominant = true;
                for (int i : b.positive)
                    if (pairing(in.lambda_B, in.datum.coroot(i)) < Rat(0)) dominant = false;
                if (dominant) {
                    in.borel = b;
                    in.lchamber = static_cast<int>(lc);
                    break;
                }
            }
        }
        if (!in.borel) fail(Err::NotDominant, "lambda_B is dominant for no compatible Borel");
    }
    for (int i : in.borel->positive)
        if (pairing(in.lambda_B, in.datum.coroot(i)) < Rat(0))
            fail(Err::NotDominant, "lambda_B is not dominant for the chosen Borel");
    return in;
}

TorusElement resolve_gamma(const Options& opt, const DatumConfig& cfg, const RealRootDatum& datum) {
    CoweightVec u = CoweightVec::zero(datum.rank());
    CoweightVec s = CoweightVec::zero(datum.rank());
    if (!opt.gamma_u.empty())
        u = CoweightVec(parse_rat_csv(opt.gamma_u, datum.rank()));
    else if (cfg.gamma_u)
        u = CoweightVec(*cfg.gamma_u);
    if (!opt.gamma_s.empty())
        s = CoweightVec(parse_rat_csv(opt.gamma_s, datum.rank()));
    else if (cfg.gamma_s)
        s = CoweightVec(*cfg.gamma_s);
    return TorusElement::elliptic(datum, u, s);
}

int cmd_phi(CommandContext& ctx) {
    DatumConfig cfg = resolve_config(ctx.opt);
    PhiEvaluator ev{RealRootDatum(cfg.raw), ctx.opt.weyl_cap};
    PhiInputs in = resolve_phi_inputs(ctx.opt, cfg, ev);
    TorusElement gamma = resolve_gamma(ctx.opt, cfg, ev.datum());

    PhiResult res = ev.phi_elliptic(*in.borel, in.lchamber, in.lambda_B, gamma);
    Json contribs = Json::array();
    for (const auto& c : res.contributions)
        contribs.push_back(Json{{"omega", c.omega},
                                {"sign", c.sign},
                                {"highest_weight", rvec_json(c.highest_weight.c)},
                                {"trace", complex_json(c.trace)}});
    ctx.report = Json{{"command", "phi"},      {"name", cfg.name},
                      {"lambda_B", rvec_json(in.lambda_B.c)},
                      {"value", complex_json(res.value)},
                      {"q_L", res.q_l},        {"wl_order", res.wl_order},
                      {"wlm_size", res.wlm_size},
                      {"contributions", contribs}};
    return 0;
}

int cmd_probe(CommandContext& ctx) {
    DatumConfig cfg = resolve_config(ctx.opt);
    PhiEvaluator ev{RealRootDatum(cfg.raw), ctx.opt.weyl_cap};
    PhiInputs in = resolve_phi_inputs(ctx.opt, cfg, ev);
    TorusElement gamma_c = resolve_gamma(ctx.opt, cfg, ev.datum());

    std::vector<Rat> ts;
    if (!ctx.opt.t_seq.empty())
        for (const auto& tok : split_csv(ctx.opt.t_seq)) ts.push_back(Rat::parse(tok));
    else
        ts = {Rat(1, 10), Rat(1, 100), Rat(1, 1000), Rat(1, 10000)};

    CoweightVec x0 = ev.am().from_am(ev.am().l_chambers()[in.lchamber].witness);
    LimitReport rep = ev.limit_probe(*in.borel, in.lchamber, in.lambda_B, gamma_c, x0, ts);
    Json points = Json::array();
    for (const auto& p : rep.points)
        points.push_back(Json{{"t", rat_json(p.t)},
                              {"value", complex_json(p.value)},
                              {"abs_error", p.abs_error}});
    ctx.report = Json{{"command", "probe"},
                      {"name", cfg.name},
                      {"target", complex_json(rep.target)},
                      {"points", points},
                      {"fitted_rate", rep.fitted_rate},
                      {"converged", rep.converged}};
    return rep.converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify-all

struct CheckList {
    Json checks = Json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back(Json{{"check", name}, {"pass", pass}, {"detail", detail}});
        if (!pass) all_pass = false;
    }
};

void verify_entry(const CatalogEntry& entry, const Options& opt, CheckList& out) {
    const std::string& name = entry.config.name;
    auto label = [&name](const std::string& s) { return name + "/" + s; };
    double tol = opt.tol;

    RealRootDatum datum(entry.config.raw);
    WeylGroup weyl(datum, opt.weyl_cap);

    // Weyl structure.
    {
        bool ok = weyl[0].mat.is_identity();
        for (int i = 0; i < weyl.size() && ok; ++i) {
            const auto& w = weyl[i];
            if (im_det(w.mat) != w.sign || ((w.length % 2 == 0) ? 1 : -1) != w.sign) ok = false;
        }
        out.add(label("weyl-sign-det"), ok);
    }
    {
        auto subs = weyl_subgroups(datum, weyl);
        bool ok = true;
        for (int a : subs.w_l)
            for (int b : subs.w_m)
                if (weyl.mult(a, b) != weyl.mult(b, a)) ok = false;
        int common = 0;
        for (int a : subs.w_l)
            for (int b : subs.w_m)
                if (a == b) ++common;
        if (common != 1) ok = false;
        for (int a : subs.w_l)
            for (int i : datum.classification().imaginary_roots)
                if (weyl[a].mat.apply(datum.root_coords()[i]) != datum.root_coords()[i]) ok = false;
        out.add(label("subgroups"), ok);
    }

    AmGeometry am(datum, weyl);
    {
        bool ok = true;
        long long expected_rn =
            (datum.num_roots() - static_cast<long long>(datum.classification().imaginary_roots.size())) / 2;
        std::vector<std::vector<int>> seen;
        for (size_t pc = 0; pc < am.p_chambers().size(); ++pc) {
            auto rn = am.parabolic_of_p(static_cast<int>(pc));
            if (static_cast<long long>(rn.size()) != expected_rn) ok = false;
            if (std::find(seen.begin(), seen.end(), rn) != seen.end()) ok = false;
            seen.push_back(rn);
            int lc = am.l_chamber_of_p(static_cast<int>(pc));
            std::vector<int> rl_pos;
            for (int i : rn)
                if (datum.is_real(i)) rl_pos.push_back(i);
            if (rl_pos != am.positive_reals_of_l(lc)) ok = false;
        }
        out.add(label("parabolic-correspondence"), ok);
    }

    // Abstract system counting and constants.
    EssentialView full = essentialize(datum_view(datum));
    ChamberComplex cx(full.view, opt.weyl_cap);
    {
        bool ok = 2 * static_cast<long long>(cx.facets().size()) ==
                  static_cast<long long>(cx.rank()) * cx.weyl().size();
        auto incidence = chamber_facet_incidence(static_cast<int>(cx.chambers().size()), cx.facets());
        for (const auto& inc : incidence)
            if (static_cast<int>(inc.size()) != cx.rank()) ok = false;
        for (const auto& w : wall_facet_counts(cx)) {
            if (!w.per_chamber_uniform) ok = false;
            if (w.n_alpha * w.wall_weyl_order != w.facets_in_wall) ok = false;
        }
        auto orb = facet_orbit_data(cx);
        if (orb.num_orbits != cx.rank()) ok = false;
        for (long long s : orb.stabilizer_orders)
            if (s != 2) ok = false;
        out.add(label("facet-counting"), ok);
    }

    Sampler sampler(0xA11CE5u);
    if (entry.prop1_eligible) {
        ConstantEngine eng(cx);
        bool ok = true;
        std::string detail;
        try {
            for (int rep = 0; rep < 3; ++rep) {
                RatVec lam = sampler.regular_functional(cx);
                RatVec x0;
                for (size_t c = 0; c < cx.chambers().size(); ++c)
                    if (cx.lambda_in_dual_chamber(static_cast<int>(c), lam)) {
                        x0 = cx.chambers()[c].witness;
                        break;
                    }
                orbit_sum(eng, x0, lam);
                orbit_alternating_sum(eng, x0, lam);
                orbit_sums_over_lambda(eng, x0, lam);
                facet_identity(eng, lam);
                if (!verify_dual_cone_vanishing(cx, eng.table(lam))) ok = false;
                if (!verify_equivariance(eng, lam)) ok = false;
            }
        } catch (const ArthurError& e) {
            ok = false;
            detail = e.what();
        }
        out.add(label("constants-identities"), ok, detail);
    }

    // Character-level identities, on a Borel compatible with the base
    // L-chamber's parabolic.
    PhiEvaluator ev(datum, opt.weyl_cap);
    BorelChoice borel = compatible_borels(datum, weyl, am, 0).front();
    {
        bool ok = true;
        std::string detail;
        try {
            for (int rep = 0; rep < 5; ++rep) {
                TorusElement g = sampler.regular_element(datum, true);
                Cplx dp = delta_product(datum, g, borel.nilradical);
                Cplx dbm = delta_product(datum, g, borel.m_positive);
                Cplx db = delta_product(datum, g, borel.positive);
                if (std::abs(dp * dbm - db) > tol * (1.0 + std::abs(db))) ok = false;
                int w = static_cast<int>(sampler.small_int(0, weyl.size() - 1));
                if (!delta_quotient_identity(datum, weyl[w], borel, g, tol)) ok = false;
                if (!ev.dmg_normalization_check(borel, g, tol)) ok = false;
            }
        } catch (const ArthurError& e) {
            ok = false;
            detail = e.what();
        }
        out.add(label("delta-identities"), ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        try {
            Subsystem msys = m_subsystem(datum, borel);
            WeightVec mu = WeightVec::zero(datum.rank());
            // A small dominant weight: sum of positive roots is dominant.
            for (int i : borel.positive) mu = mu + datum.root(i);
            const WeightTable& t = ev.chars().table(msys, mu);
            Rat dim = weyl_dimension(datum, msys, mu);
            if (Rat(t.dimension) != dim) ok = false;
            for (int rep = 0; rep < 5; ++rep) {
                TorusElement g = sampler.regular_element(datum, true);
                Cplx via_table = ev.chars().trace(msys, mu, g);
                Cplx via_wcf = wcf_quotient(datum, weyl, msys, mu, g);
                if (std::abs(via_table - via_wcf) > tol * (1.0 + std::abs(via_wcf))) ok = false;
                int w0 = longest_element(datum, weyl, msys);
                WeightVec dual_mu = -(weyl[w0].apply(mu));
                Cplx dual_tr = ev.chars().trace(msys, dual_mu, g.inverse());
                if (std::abs(dual_tr - via_table) > tol * (1.0 + std::abs(via_table))) ok = false;
            }
        } catch (const ArthurError& e) {
            ok = false;
            detail = e.what();
        }
        out.add(label("character-oracle"), ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        try {
            for (int rep = 0; rep < 5; ++rep) {
                CoefficientMap m(weyl.size(), 0);
                for (int omega : kostant_reps(datum, weyl, borel)) {
                    long long v = sampler.small_int(-4, 4);
                    std::vector<int> wm = weyl.reflection_subgroup(datum.classification().imaginary_roots);
                    for (int x : wm) m[weyl.mult(x, omega)] = v;
                }
                TorusElement g = sampler.regular_element(datum, true);
                Cplx raw = ev.sum_over_borels(borel, WeightVec::zero(datum.rank()), m, g);
                Cplx wcf = ev.sum_over_kostant(borel, WeightVec::zero(datum.rank()), m, g);
                if (std::abs(raw - wcf) > tol * (1.0 + std::abs(wcf))) ok = false;
            }
        } catch (const ArthurError& e) {
            ok = false;
            detail = e.what();
        }
        out.add(label("expression-chain"), ok, detail);
    }

    if (entry.has_minus_one_in_wl) {
        bool ok = true;
        std::string detail;
        try {
            auto borels = compatible_borels(datum, weyl, am, 0);
            WeightVec lam_b = WeightVec::zero(datum.rank());
            TorusElement one = TorusElement::elliptic(datum, CoweightVec::zero(datum.rank()),
                                                      CoweightVec::zero(datum.rank()));
            Cplx first;
            for (size_t b = 0; b < borels.size(); ++b) {
                PhiResult r = ev.phi_elliptic(borels[b], 0, lam_b, one);
                if (b == 0)
                    first = r.value;
                else if (std::abs(r.value - first) > tol * (1.0 + std::abs(first)))
                    ok = false;
            }
            LimitReport rep = ev.limit_probe(
                borels.front(), 0, lam_b, one,
                ev.am().from_am(ev.am().l_chambers()[0].witness),
                {Rat(1, 10), Rat(1, 100), Rat(1, 1000), Rat(1, 10000)});
            if (!rep.converged) ok = false;
        } catch (const ArthurError& e) {
            ok = false;
            detail = e.what();
        }
        out.add(label("phi-invariance-and-limit"), ok, detail);
    }
}

int cmd_verify_all(CommandContext& ctx) {
    CheckList list;
    if (!ctx.opt.system.empty() || !ctx.opt.config.empty()) {
        DatumConfig cfg = resolve_config(ctx.opt);
        verify_entry(make_entry(cfg), ctx.opt, list);
    } else {
        for (const auto& e : builtin_catalog()) {
            if (e.config.name == "f4-split" || e.config.name == "d4-split") continue;  // slow set
            verify_entry(e, ctx.opt, list);
        }
    }
    ctx.report = Json{{"command", "verify-all"}, {"checks", list.checks}, {"all_pass", list.all_pass}};
    return list.all_pass ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with stable characters on real tori"};
    app.require_subcommand(1);

    CommandContext ctx;
    Options& opt = ctx.opt;

    auto add_common = [&opt](CLI::App* cmd) {
        cmd->add_option("--config", opt.config, "config file or catalog entry");
        cmd->add_option("--system", opt.system, "catalog system name");
        cmd->add_option("--lambda", opt.lambda, "regular character, CSV");
        cmd->add_option("--lambdaB", opt.lambda_B, "highest weight, CSV");
        cmd->add_option("--gamma-u", opt.gamma_u, "compact parameter, CSV");
        cmd->add_option("--gamma-s", opt.gamma_s, "split central parameter, CSV");
        cmd->add_option("--borel", opt.borel, "positive-root indices, CSV");
        cmd->add_option("--t-seq", opt.t_seq, "probe scales, CSV");
        cmd->add_option("--out", opt.out_file, "also write the JSON report here");
        cmd->add_option("--format", opt.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--tol", opt.tol, "relative tolerance for float identities");
        cmd->add_option("--weyl-cap", opt.weyl_cap, "Weyl group enumeration cap");
    };

    struct Cmd {
        const char* name;
        int (*run)(CommandContext&);
    };
    const std::vector<Cmd> cmds = {
        {"catalog", cmd_catalog}, {"validate", cmd_validate}, {"chambers", cmd_chambers},
        {"constants", cmd_constants}, {"prop1", cmd_prop1}, {"phi", cmd_phi},
        {"probe", cmd_probe}, {"verify-all", cmd_verify_all},
    };
    for (const auto& c : cmds) add_common(app.add_subcommand(c.name, c.name));

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << std::endl;
            return 0;
        }
        err << "error: " << e.what() << std::endl;
        return 2;
    }

    try {
        for (const auto& c : cmds) {
            if (app.get_subcommand(c.name)->parsed()) {
                int code = c.run(ctx);
                emit(ctx, out);
                return code;
            }
        }
        err << "error: no command" << std::endl;
        return 2;
    } catch (const ArthurError& e) {
        Json r = Json{{"error", err_name(e.kind())}, {"detail", e.what()}};
        out << r.dump(2) << std::endl;
        switch (e.kind()) {
            case Err::IdentityViolated:
            case Err::RecursionInconsistent:
            case Err::SimpleTransitivityFailure:
            case Err::InternalError:
                return 1;
            case Err::MinusOneNotInWeylGroup:
            case Err::NonIntegralQ:
            case Err::WeylCapExceeded:
            case Err::ArrangementCapExceeded:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << std::endl;
        return 2;
    }
}

}  // namespace arthur
