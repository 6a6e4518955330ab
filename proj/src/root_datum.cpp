#include "arthur/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "arthur/errors.hpp"

namespace arthur {

namespace {

std::string ivec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

IntVec negate(const IntVec& v) {
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

long long dot_ll(const IntVec& a, const IntVec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntMat mat_from_rows(const std::vector<IntVec>& rows) {
    IntMat m(static_cast<int>(rows.size()));
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) m.at(r, c) = rows[r][c];
    return m;
}

// Reflection in (root, coroot) on the weight lattice: v -> v - <v, coroot> root.
IntMat reflection_matrix(const IntVec& root, const IntVec& coroot) {
    int n = static_cast<int>(root.size());
    IntMat m = IntMat::identity(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(r, c) -= root[r] * coroot[c];
    return m;
}

}  // namespace

ValidationReport RealRootDatum::validate(const RawDatum& raw) {
    ValidationReport rep;
    auto violate = [&rep](const char* kind, const std::string& detail) {
        rep.ok = false;
        rep.violations.push_back({kind, detail});
    };

    int n = raw.rank;
    if (n <= 0) {
        violate("ValidationError", "rank must be positive");
        return rep;
    }
    if (raw.roots.size() != raw.coroots.size())
        violate("ValidationError", "root and coroot lists differ in length");
    auto dims_ok = [&](const std::vector<IntVec>& vs) {
        return std::all_of(vs.begin(), vs.end(),
                           [n](const IntVec& v) { return static_cast<int>(v.size()) == n; });
    };
    if (!dims_ok(raw.roots) || !dims_ok(raw.coroots)) {
        violate("ValidationError", "root or coroot of wrong dimension");
        return rep;
    }
    if (static_cast<int>(raw.sigma.size()) != n || !dims_ok(raw.sigma)) {
        violate("ValidationError", "sigma must be a rank x rank integer matrix");
        return rep;
    }

    std::map<IntVec, int> index;
    for (size_t i = 0; i < raw.roots.size(); ++i) {
        if (std::all_of(raw.roots[i].begin(), raw.roots[i].end(), [](long long x) { return x == 0; }))
            violate("ValidationError", "zero vector listed as a root");
        if (index.count(raw.roots[i]))
            violate("ValidationError", "duplicate root " + ivec_str(raw.roots[i]));
        index[raw.roots[i]] = static_cast<int>(i);
    }

    size_t m = std::min(raw.roots.size(), raw.coroots.size());
    for (size_t i = 0; i < m; ++i) {
        long long p = dot_ll(raw.roots[i], raw.coroots[i]);
        if (p != 2)
            violate("PairingNotTwo",
                    "<" + ivec_str(raw.roots[i]) + ", " + ivec_str(raw.coroots[i]) + "> = " + std::to_string(p));
    }

    // Reduced: no root may be a proper multiple of another.
    for (size_t i = 0; i < raw.roots.size(); ++i)
        for (size_t j = 0; j < raw.roots.size(); ++j) {
            if (i == j) continue;
            for (long long k = 2; k <= 4; ++k) {
                IntVec scaled(raw.roots[j].size());
                for (size_t t = 0; t < scaled.size(); ++t) scaled[t] = k * raw.roots[j][t];
                if (scaled == raw.roots[i])
                    violate("NonReducedSystem",
                            ivec_str(raw.roots[i]) + " = " + std::to_string(k) + " * " + ivec_str(raw.roots[j]));
            }
        }

    // Reflections must permute the root set (checked with the paired coroots).
    for (size_t i = 0; i < m; ++i) {
        IntMat refl = reflection_matrix(raw.roots[i], raw.coroots[i]);
        for (size_t j = 0; j < raw.roots.size(); ++j) {
            IntVec img = refl.apply(raw.roots[j]);
            if (!index.count(img)) {
                violate("ReflectionEscapesRootSet",
                        "s_" + ivec_str(raw.roots[i]) + " maps " + ivec_str(raw.roots[j]) + " to " + ivec_str(img));
                break;
            }
        }
    }

    IntMat sig = mat_from_rows(raw.sigma);
    if (!sig.mul(sig).is_identity())
        violate("NotAnInvolution", "sigma squared is not the identity");
    else {
        for (size_t j = 0; j < raw.roots.size(); ++j) {
            IntVec img = sig.apply(raw.roots[j]);
            auto it = index.find(img);
            if (it == index.end()) {
                violate("SigmaNotRootPermutation",
                        "sigma maps " + ivec_str(raw.roots[j]) + " outside the root set");
                continue;
            }
            // The induced coweight action must carry coroots to matching coroots.
            if (static_cast<size_t>(it->second) < m && j < m) {
                IntVec cimg = sig.transpose().apply(raw.coroots[j]);
                if (cimg != raw.coroots[it->second])
                    violate("SigmaNotRootPermutation",
                            "sigma is incompatible with the coroot of " + ivec_str(raw.roots[j]));
            }
        }
    }

    return rep;
}

RealRootDatum::RealRootDatum(const RawDatum& raw) {
    ValidationReport rep = validate(raw);
    if (!rep.ok) {
        std::string msg;
        for (const auto& v : rep.violations) {
            if (!msg.empty()) msg += "; ";
            msg += v.kind + ": " + v.detail;
        }
        fail(Err::ValidationError, msg);
    }

    rank_ = raw.rank;
    roots_ = raw.roots;
    coroots_ = raw.coroots;
    sigma_.on_weights = mat_from_rows(raw.sigma);
    sigma_.on_coweights = sigma_.on_weights.transpose();
    for (size_t i = 0; i < roots_.size(); ++i) root_index_[roots_[i]] = static_cast<int>(i);

    neg_root_.resize(roots_.size());
    sigma_root_.resize(roots_.size());
    for (size_t i = 0; i < roots_.size(); ++i) {
        neg_root_[i] = root_index_.at(negate(roots_[i]));
        sigma_root_[i] = root_index_.at(sigma_.on_weights.apply(roots_[i]));
    }

    for (size_t i = 0; i < roots_.size(); ++i) {
        int si = sigma_root_[i];
        if (si == static_cast<int>(i))
            cls_.real_roots.push_back(static_cast<int>(i));
        else if (si == neg_root_[i])
            cls_.imaginary_roots.push_back(static_cast<int>(i));
        else
            cls_.complex_roots.push_back(static_cast<int>(i));
    }

    // a_M = fixed coweights of sigma; compact part = (-1)-eigenspace.
    RatMat fix(rank_, rank_), anti(rank_, rank_);
    for (int r = 0; r < rank_; ++r)
        for (int c = 0; c < rank_; ++c) {
            Rat v(sigma_.on_coweights.at(r, c));
            fix.at(r, c) = v - Rat(r == c ? 1 : 0);
            anti.at(r, c) = v + Rat(r == c ? 1 : 0);
        }
    for (auto& v : rm_kernel(fix)) am_basis_.push_back(CoweightVec(v));
    for (auto& v : rm_kernel(anti)) tc_basis_.push_back(CoweightVec(v));

    // a_G = coweights killed by every root and fixed by sigma.
    RatMat ag(static_cast<int>(roots_.size()) + rank_, rank_);
    for (size_t i = 0; i < roots_.size(); ++i)
        for (int c = 0; c < rank_; ++c) ag.at(static_cast<int>(i), c) = Rat(roots_[i][c]);
    for (int r = 0; r < rank_; ++r)
        for (int c = 0; c < rank_; ++c)
            ag.at(static_cast<int>(roots_.size()) + r, c) = fix.at(r, c);
    for (auto& v : rm_kernel(ag)) ag_basis_.push_back(CoweightVec(v));
}

int RealRootDatum::root_index(const IntVec& coords) const {
    auto it = root_index_.find(coords);
    return it == root_index_.end() ? -1 : it->second;
}

bool RealRootDatum::is_real(int root) const { return sigma_root_[root] == root; }
bool RealRootDatum::is_imaginary(int root) const { return sigma_root_[root] == neg_root_[root]; }

WeylElement RealRootDatum::reflection(int i) const {
    WeylElement w;
    w.mat = reflection_matrix(roots_[i], coroots_[i]);
    w.comat = w.mat.transpose();
    w.length = 1;
    w.sign = -1;
    return w;
}

WeightVec RealRootDatum::project_pM(const WeightVec& v) const {
    return WeightVec(rv_scale(Rat(1, 2), rv_add(v.c, sigma_.on_weights.apply(v.c))));
}

CoweightVec RealRootDatum::project_pM(const CoweightVec& v) const {
    return CoweightVec(rv_scale(Rat(1, 2), rv_add(v.c, sigma_.on_coweights.apply(v.c))));
}

void RealRootDatum::ensure_pg() const {
    if (pg_weights_) return;
    // Average over the Weyl group, then over {1, sigma}. Cached.
    WeylGroup w(*this);
    RatMat avg(rank_, rank_);
    for (int i = 0; i < w.size(); ++i) {
        const IntMat& m = w[i].mat;
        for (int r = 0; r < rank_; ++r)
            for (int c = 0; c < rank_; ++c) avg.at(r, c) += Rat(m.at(r, c));
    }
    Rat inv(1, w.size());
    for (auto& x : avg.a) x *= inv;
    RatMat sym(rank_, rank_);
    for (int r = 0; r < rank_; ++r)
        for (int c = 0; c < rank_; ++c) {
            sym.at(r, c) = Rat(sigma_.on_weights.at(r, c), 2);
            if (r == c) sym.at(r, c) += Rat(1, 2);
        }
    pg_weights_ = sym.mul(avg);
    pg_coweights_ = pg_weights_->transpose();
}

WeightVec RealRootDatum::project_pG(const WeightVec& v) const {
    ensure_pg();
    return WeightVec(pg_weights_->apply(v.c));
}

CoweightVec RealRootDatum::project_pG(const CoweightVec& v) const {
    ensure_pg();
    return CoweightVec(pg_coweights_->apply(v.c));
}

namespace {
bool in_span(const std::vector<CoweightVec>& basis, const CoweightVec& x) {
    if (basis.empty()) return x.is_zero();
    int dim = x.dim();
    RatMat m(static_cast<int>(basis.size()) + 1, dim);
    for (size_t r = 0; r < basis.size(); ++r)
        for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = basis[r].c[c];
    for (int c = 0; c < dim; ++c) m.at(static_cast<int>(basis.size()), c) = x.c[c];
    return rm_rank(m) == static_cast<int>(basis.size());
}
}  // namespace

bool RealRootDatum::in_am(const CoweightVec& x) const { return in_span(am_basis_, x); }
bool RealRootDatum::in_ag(const CoweightVec& x) const { return in_span(ag_basis_, x); }
bool RealRootDatum::in_compact_part(const CoweightVec& x) const { return in_span(tc_basis_, x); }

CoweightVec generic_coweight(const RealRootDatum& datum) {
    for (long long t = 1;; ++t) {
        IntVec g(datum.rank());
        long long p = 1;
        for (int i = 0; i < datum.rank(); ++i) {
            g[i] = p;
            p *= t;
        }
        bool ok = true;
        for (const auto& r : datum.root_coords())
            if (dot_ll(r, g) == 0) {
                ok = false;
                break;
            }
        if (ok) return CoweightVec(g);
        if (t > 1000) fail(Err::InternalError, "no generic coweight found");
    }
}

WeylGroup::WeylGroup(const RealRootDatum& datum, long long cap) : datum_(&datum) {
    // Positive system from a deterministic generic point, then the
    // indecomposable positives as simple roots.
    CoweightVec g = generic_coweight(datum);
    std::vector<int> positives;
    for (int i = 0; i < datum.num_roots(); ++i)
        if (pairing(datum.root(i), g) > Rat(0)) positives.push_back(i);

    for (int i : positives) {
        bool decomposable = false;
        for (int j : positives) {
            if (decomposable) break;
            for (int k : positives) {
                IntVec sum(datum.rank());
                for (int c = 0; c < datum.rank(); ++c)
                    sum[c] = datum.root_coords()[j][c] + datum.root_coords()[k][c];
                if (sum == datum.root_coords()[i]) {
                    decomposable = true;
                    break;
                }
            }
        }
        if (!decomposable) simple_roots_.push_back(i);
    }

    std::vector<WeylElement> gens;
    for (int i : simple_roots_) gens.push_back(datum.reflection(i));

    std::map<std::vector<long long>, int> seen;
    std::vector<WeylElement> found;
    WeylElement id{IntMat::identity(datum.rank()), IntMat::identity(datum.rank()), 0, 1};
    seen[id.mat.a] = 0;
    found.push_back(id);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            IntMat m = found[cur].mat.mul(s.mat);
            if (seen.count(m.a)) continue;
            if (static_cast<long long>(found.size()) >= cap)
                fail(Err::WeylCapExceeded,
                     "Weyl group exceeds cap " + std::to_string(cap));
            WeylElement w;
            w.mat = std::move(m);
            w.comat = found[cur].comat.mul(s.comat);
            w.length = found[cur].length + 1;
            w.sign = -found[cur].sign;
            seen[w.mat.a] = static_cast<int>(found.size());
            found.push_back(std::move(w));
            queue.push_back(static_cast<int>(found.size()) - 1);
        }
    }

    std::sort(found.begin(), found.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.mat.a < b.mat.a;
    });
    elems_ = std::move(found);
    for (int i = 0; i < static_cast<int>(elems_.size()); ++i) index_[elems_[i].mat.a] = i;
}

int WeylGroup::index_of(const IntMat& mat) const {
    auto it = index_.find(mat.a);
    return it == index_.end() ? -1 : it->second;
}

int WeylGroup::mult(int i, int j) const {
    int k = index_of(elems_[i].mat.mul(elems_[j].mat));
    if (k < 0) fail(Err::InternalError, "Weyl group not closed under multiplication");
    return k;
}

int WeylGroup::inverse(int i) const {
    for (int j = 0; j < size(); ++j)
        if (mult(i, j) == 0) return j;
    fail(Err::InternalError, "Weyl element without inverse");
}

int WeylGroup::reflection_index(int root) const {
    int idx = index_of(datum_->reflection(root).mat);
    if (idx < 0) fail(Err::InternalError, "reflection missing from Weyl group");
    return idx;
}

std::optional<int> WeylGroup::minus_one() const {
    IntMat m(datum_->rank());
    for (int i = 0; i < m.n; ++i) m.at(i, i) = -1;
    int idx = index_of(m);
    if (idx < 0) return std::nullopt;
    return idx;
}

std::vector<int> WeylGroup::reflection_subgroup(const std::vector<int>& root_indices) const {
    std::vector<int> gens;
    for (int r : root_indices) gens.push_back(reflection_index(r));
    std::vector<char> in(size(), 0);
    std::deque<int> queue{0};
    in[0] = 1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int g : gens) {
            int nxt = mult(cur, g);
            if (!in[nxt]) {
                in[nxt] = 1;
                queue.push_back(nxt);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (in[i]) out.push_back(i);
    return out;
}

WeylSubgroups weyl_subgroups(const RealRootDatum& datum, const WeylGroup& weyl) {
    WeylSubgroups out;
    out.w_l = weyl.reflection_subgroup(datum.classification().real_roots);
    out.w_m = weyl.reflection_subgroup(datum.classification().imaginary_roots);
    return out;
}

Rat q_value(long long positive_root_count, long long dim) {
    return Rat(positive_root_count + dim, 2);
}

}  // namespace arthur
