#include "arthur/arrangement.hpp"

#include <algorithm>
#include <map>

#include "arthur/errors.hpp"
#include "arthur/lp.hpp"

namespace arthur {

namespace {

// Primitive integer form with positive leading entry; returns the sign flip.
std::pair<RatVec, int> canonical_normal(const RatVec& f) {
    mpz_class lcm = 1;
    for (const auto& x : f)
        if (!x.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().get_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(f.size());
    mpz_class gcd = 0;
    for (const auto& x : f) {
        mpz_class v = x.num() * (lcm / x.den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    if (gcd == 0) fail(Err::InternalError, "zero functional in canonical_normal");
    int flip = 1;
    for (const auto& v : ints)
        if (v != 0) {
            flip = sgn(v) > 0 ? 1 : -1;
            break;
        }
    RatVec out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = Rat(mpz_class(ints[i] * flip / gcd));
    return {out, flip};
}

}  // namespace

Arrangement Arrangement::build(int dim, const std::vector<RatVec>& functionals,
                               long long hyperplane_cap) {
    Arrangement arr;
    arr.dim_ = dim;
    std::map<RatVec, int> seen;
    for (size_t i = 0; i < functionals.size(); ++i) {
        if (rv_is_zero(functionals[i]))
            fail(Err::ValidationError, "zero functional cannot define a hyperplane");
        auto [normal, flip] = canonical_normal(functionals[i]);
        auto it = seen.find(normal);
        int idx;
        if (it == seen.end()) {
            idx = static_cast<int>(arr.hps_.size());
            seen[normal] = idx;
            arr.hps_.push_back({normal, {}, {}});
        } else {
            idx = it->second;
        }
        arr.hps_[idx].sources.push_back(static_cast<int>(i));
        arr.hps_[idx].source_signs.push_back(flip);
        arr.source_map_.push_back({idx, flip});
    }
    if (static_cast<long long>(arr.hps_.size()) > hyperplane_cap)
        fail(Err::ArrangementCapExceeded,
             std::to_string(arr.hps_.size()) + " hyperplanes exceed cap " + std::to_string(hyperplane_cap));

    // Canonical order; remap sources.
    std::vector<int> order(arr.hps_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return arr.hps_[a].normal < arr.hps_[b].normal; });
    std::vector<int> rank(order.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    std::vector<Hyperplane> sorted(arr.hps_.size());
    for (size_t i = 0; i < order.size(); ++i) sorted[i] = std::move(arr.hps_[order[i]]);
    arr.hps_ = std::move(sorted);
    for (auto& sm : arr.source_map_) sm.first = rank[sm.first];
    return arr;
}

int Arrangement::source_hyperplane(int source, int* sign_out) const {
    if (sign_out) *sign_out = source_map_[source].second;
    return source_map_[source].first;
}

int Arrangement::sign_of(int h, const RatVec& point) const {
    return rv_dot(hps_[h].normal, point).sign();
}

std::vector<int8_t> Arrangement::sign_vector(const RatVec& point) const {
    std::vector<int8_t> out(hps_.size());
    for (size_t h = 0; h < hps_.size(); ++h)
        out[h] = static_cast<int8_t>(sign_of(static_cast<int>(h), point));
    return out;
}

std::vector<Chamber> enumerate_chambers(const Arrangement& arr, long long chamber_cap) {
    struct Region {
        std::vector<int8_t> signs;
        RatVec witness;
    };
    std::vector<Region> regions{{{}, RatVec(arr.dim())}};

    for (int k = 0; k < arr.size(); ++k) {
        const RatVec& normal = arr.hyperplane(k).normal;
        std::vector<Region> next;
        for (auto& reg : regions) {
            auto constraints_for = [&](int side) {
                std::vector<RatVec> rows;
                for (int i = 0; i < k; ++i) {
                    RatVec row = arr.hyperplane(i).normal;
                    if (reg.signs[i] < 0)
                        for (auto& x : row) x = -x;
                    rows.push_back(std::move(row));
                }
                RatVec row = normal;
                if (side < 0)
                    for (auto& x : row) x = -x;
                rows.push_back(std::move(row));
                return rows;
            };

            int s = rv_dot(normal, reg.witness).sign();
            if (s != 0) {
                auto other = feasible_point(constraints_for(-s), arr.dim());
                Region keep = reg;
                keep.signs.push_back(static_cast<int8_t>(s));
                next.push_back(std::move(keep));
                if (other) {
                    Region split = reg;
                    split.signs.push_back(static_cast<int8_t>(-s));
                    split.witness = std::move(*other);
                    next.push_back(std::move(split));
                }
            } else {
                // Witness lies on the new hyperplane: both sides are nonempty.
                for (int side : {+1, -1}) {
                    auto pt = feasible_point(constraints_for(side), arr.dim());
                    if (!pt) fail(Err::InternalError, "chamber split lost a side");
                    Region split = reg;
                    split.signs.push_back(static_cast<int8_t>(side));
                    split.witness = std::move(*pt);
                    next.push_back(std::move(split));
                }
            }
            if (static_cast<long long>(next.size()) > chamber_cap)
                fail(Err::ArrangementCapExceeded, "chamber count exceeds cap");
        }
        regions = std::move(next);
    }

    std::sort(regions.begin(), regions.end(),
              [](const Region& a, const Region& b) { return a.signs < b.signs; });
    std::vector<Chamber> out;
    out.reserve(regions.size());
    for (auto& r : regions) {
        for (int k = 0; k < arr.size(); ++k)
            if (arr.sign_of(k, r.witness) != r.signs[k])
                fail(Err::InternalError, "chamber witness does not match sign vector");
        out.push_back({std::move(r.signs), std::move(r.witness)});
    }
    return out;
}

std::vector<Facet> enumerate_facets(const Arrangement& arr, const std::vector<Chamber>& chambers) {
    std::map<std::vector<int8_t>, int> index;
    for (size_t i = 0; i < chambers.size(); ++i) index[chambers[i].signs] = static_cast<int>(i);

    std::vector<Facet> facets;
    for (size_t ci = 0; ci < chambers.size(); ++ci) {
        for (int k = 0; k < arr.size(); ++k) {
            if (chambers[ci].signs[k] < 0) continue;  // handle each pair from its + side
            auto flipped = chambers[ci].signs;
            flipped[k] = -1;
            auto it = index.find(flipped);
            if (it == index.end()) continue;
            int cj = it->second;

            // Exact crossing point of the segment between the two witnesses.
            const RatVec& x = chambers[ci].witness;
            const RatVec& y = chambers[cj].witness;
            Rat p = rv_dot(arr.hyperplane(k).normal, x);
            Rat q = rv_dot(arr.hyperplane(k).normal, y);
            Rat t = p / (p - q);
            RatVec w(arr.dim());
            for (int c = 0; c < arr.dim(); ++c) w[c] = x[c] + t * (y[c] - x[c]);

            Facet f;
            f.wall = k;
            f.signs = chambers[ci].signs;
            f.signs[k] = 0;
            f.witness = std::move(w);
            f.chamber_pos = static_cast<int>(ci);
            f.chamber_neg = cj;
            for (int h = 0; h < arr.size(); ++h)
                if (arr.sign_of(h, f.witness) != f.signs[h])
                    fail(Err::InternalError, "facet witness does not match sign vector");
            facets.push_back(std::move(f));
        }
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
        if (a.wall != b.wall) return a.wall < b.wall;
        return a.signs < b.signs;
    });
    return facets;
}

std::vector<std::vector<int>> chamber_facet_incidence(int num_chambers,
                                                      const std::vector<Facet>& facets) {
    std::vector<std::vector<int>> out(num_chambers);
    for (size_t f = 0; f < facets.size(); ++f) {
        out[facets[f].chamber_pos].push_back(static_cast<int>(f));
        out[facets[f].chamber_neg].push_back(static_cast<int>(f));
    }
    return out;
}

}  // namespace arthur
