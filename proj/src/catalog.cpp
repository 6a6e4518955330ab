#include "arthur/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arthur/errors.hpp"
#include "arthur/system_view.hpp"

namespace arthur {

RawDatum generate_from_simples(int rank, const std::vector<IntVec>& simple_roots,
                               const std::vector<IntVec>& simple_coroots,
                               const std::vector<IntVec>& sigma) {
    auto dot = [](const IntVec& a, const IntVec& b) {
        long long s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::set<std::pair<IntVec, IntVec>> pairs;
    for (size_t i = 0; i < simple_roots.size(); ++i) {
        pairs.insert({simple_roots[i], simple_coroots[i]});
        IntVec nr(rank), nc(rank);
        for (int c = 0; c < rank; ++c) {
            nr[c] = -simple_roots[i][c];
            nc[c] = -simple_coroots[i][c];
        }
        pairs.insert({nr, nc});
    }

    bool grew = true;
    while (grew) {
        grew = false;
        std::set<std::pair<IntVec, IntVec>> next = pairs;
        for (size_t s = 0; s < simple_roots.size(); ++s) {
            for (const auto& [r, cr] : pairs) {
                long long a = dot(r, simple_coroots[s]);
                long long b = dot(simple_roots[s], cr);
                IntVec nr(rank), nc(rank);
                for (int c = 0; c < rank; ++c) {
                    nr[c] = r[c] - a * simple_roots[s][c];
                    nc[c] = cr[c] - b * simple_coroots[s][c];
                }
                if (!next.count({nr, nc})) {
                    next.insert({nr, nc});
                    grew = true;
                }
            }
        }
        pairs = std::move(next);
    }

    RawDatum raw;
    raw.rank = rank;
    for (const auto& [r, cr] : pairs) {
        raw.roots.push_back(r);
        raw.coroots.push_back(cr);
    }
    raw.sigma = sigma;
    return raw;
}

CatalogEntry make_entry(DatumConfig config) {
    CatalogEntry e;
    e.config = std::move(config);
    RealRootDatum datum(e.config.raw);

    EssentialView full = essentialize(datum_view(datum));
    ViewWeyl full_weyl(full.view);
    e.prop1_eligible = full_weyl.minus_one().has_value();

    EssentialView real = real_root_view(datum);
    long long quotient_dim = static_cast<long long>(datum.am_basis().size()) -
                             static_cast<long long>(datum.ag_basis().size());
    if (static_cast<long long>(real.view.dim) == quotient_dim) {
        ViewWeyl real_weyl(real.view);
        e.has_minus_one_in_wl = real_weyl.minus_one().has_value();
    }
    e.has_discrete_series_torus = datum.am_basis().size() == datum.ag_basis().size();
    return e;
}

namespace {

std::vector<IntVec> identity_sigma(int rank) {
    std::vector<IntVec> s(rank, IntVec(rank, 0));
    for (int i = 0; i < rank; ++i) s[i][i] = 1;
    return s;
}

std::vector<IntVec> minus_identity_sigma(int rank) {
    std::vector<IntVec> s(rank, IntVec(rank, 0));
    for (int i = 0; i < rank; ++i) s[i][i] = -1;
    return s;
}

DatumConfig simple_config(std::string name, int rank, std::vector<IntVec> sroots,
                          std::vector<IntVec> scoroots, std::vector<IntVec> sigma) {
    DatumConfig c;
    c.name = std::move(name);
    c.raw = generate_from_simples(rank, sroots, scoroots, sigma);
    return c;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&out](DatumConfig c) { out.push_back(make_entry(std::move(c))); };

    // A1 = SL2: weight lattice Z, root 2, coroot 1.
    add(simple_config("sl2-split", 1, {{2}}, {{1}}, identity_sigma(1)));
    add(simple_config("sl2-compact", 1, {{2}}, {{1}}, minus_identity_sigma(1)));

    // GL2: single root pair e1 - e2, nontrivial split center.
    add(simple_config("gl2-split", 2, {{1, -1}}, {{1, -1}}, identity_sigma(2)));

    // SL2 x SL2.
    add(simple_config("a1xa1-split", 2, {{2, 0}, {0, 2}}, {{1, 0}, {0, 1}}, identity_sigma(2)));

    // Sp4 = C2: long roots 2e_i, short e1 +- e2.
    add(simple_config("sp4-split", 2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}}, identity_sigma(2)));
    add(simple_config("sp4-swap", 2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}}, {{0, 1}, {1, 0}}));
    add(simple_config("sp4-compact", 2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}},
                      minus_identity_sigma(2)));

    // C2 with the sign-swapped involution: real roots +-(e1 - e2).
    add(simple_config("sp4-antiswap", 2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}},
                      {{0, -1}, {-1, 0}}));

    // SO5 = B2: long e1 +- e2, short e_i.
    add(simple_config("so5-split", 2, {{1, -1}, {0, 1}}, {{1, -1}, {0, 2}}, identity_sigma(2)));

    // SL3 = A2 in the simple-root basis.
    add(simple_config("a2-split", 2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}}, identity_sigma(2)));

    // SO7 = B3.
    add(simple_config("b3-split", 3, {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}},
                      {{1, -1, 0}, {0, 1, -1}, {0, 0, 2}}, identity_sigma(3)));

    // G2 in the simple-root basis (alpha1 short).
    add(simple_config("g2-split", 2, {{1, 0}, {0, 1}}, {{2, -3}, {-1, 2}}, identity_sigma(2)));

    // D4.
    add(simple_config("d4-split", 4,
                      {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}},
                      {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}},
                      identity_sigma(4)));

    // F4 in the simple-root basis.
    add(simple_config("f4-split", 4,
                      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                      {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}},
                      identity_sigma(4)));

    return out;
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> a = {
        {"A1", "sl2-split"},   {"GL2", "gl2-split"},   {"A1xA1", "a1xa1-split"},
        {"A2", "a2-split"},    {"B2", "so5-split"},    {"C2", "sp4-split"},
        {"B3", "b3-split"},    {"G2", "g2-split"},     {"D4", "d4-split"},
        {"F4", "f4-split"},
    };
    return a;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> catalog = build_catalog();
    return catalog;
}

const CatalogEntry* find_entry(const std::string& name) {
    std::string resolved = name;
    auto it = aliases().find(name);
    if (it != aliases().end()) resolved = it->second;
    for (const auto& e : builtin_catalog())
        if (e.config.name == resolved) return &e;
    return nullptr;
}

namespace {

IntVec json_int_vec(const nlohmann::json& j) {
    if (!j.is_array()) fail(Err::ValidationError, "expected an integer array");
    IntVec out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(Err::ValidationError, "expected integer entries");
        out.push_back(x.get<long long>());
    }
    return out;
}

RatVec json_rat_vec(const nlohmann::json& j) {
    if (!j.is_array()) fail(Err::ValidationError, "expected an array of rationals");
    RatVec out;
    for (const auto& x : j) {
        if (x.is_number_integer())
            out.push_back(Rat(x.get<long long>()));
        else if (x.is_string())
            out.push_back(Rat::parse(x.get<std::string>()));
        else
            fail(Err::ValidationError, "rationals must be integers or \"p/q\" strings");
    }
    return out;
}

}  // namespace

DatumConfig load_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Err::ParseError, e.what());
    }
    if (!j.is_object()) fail(Err::ValidationError, "config must be a JSON object");

    DatumConfig c;
    c.name = j.value("name", std::string("unnamed"));
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        fail(Err::ValidationError, "config needs an integer rank");
    c.raw.rank = j["rank"].get<int>();
    for (const char* key : {"roots", "coroots", "sigma"})
        if (!j.contains(key) || !j[key].is_array())
            fail(Err::ValidationError, std::string("config needs the matrix field ") + key);
    for (const auto& r : j["roots"]) c.raw.roots.push_back(json_int_vec(r));
    for (const auto& r : j["coroots"]) c.raw.coroots.push_back(json_int_vec(r));
    for (const auto& r : j["sigma"]) c.raw.sigma.push_back(json_int_vec(r));
    if (j.contains("lambda_B")) c.lambda_B = json_int_vec(j["lambda_B"]);
    if (j.contains("gamma")) {
        const auto& g = j["gamma"];
        if (!g.is_object()) fail(Err::ValidationError, "gamma must be an object");
        if (g.contains("u")) c.gamma_u = json_rat_vec(g["u"]);
        if (g.contains("s")) c.gamma_s = json_rat_vec(g["s"]);
    }
    if (j.contains("borel")) {
        std::vector<int> b;
        for (const auto& x : j["borel"]) b.push_back(x.get<int>());
        c.borel = std::move(b);
    }
    if (j.contains("weyl_cap")) c.weyl_cap = j["weyl_cap"].get<long long>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();

    // Surface datum problems now, with the full violation list.
    RealRootDatum datum(c.raw);
    (void)datum;
    return c;
}

DatumConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::ParseError, "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

}  // namespace arthur
