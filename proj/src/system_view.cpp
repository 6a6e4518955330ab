#include "arthur/system_view.hpp"

#include <algorithm>
#include <deque>

#include "arthur/errors.hpp"

namespace arthur {

namespace {

RatMat reflection_point_mat(int dim, const RatVec& root, const RatVec& coroot) {
    RatMat m = RatMat::identity(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.at(r, c) -= coroot[r] * root[c];
    return m;
}

RatMat reflection_funct_mat(int dim, const RatVec& root, const RatVec& coroot) {
    RatMat m = RatMat::identity(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.at(r, c) -= root[r] * coroot[c];
    return m;
}

RatVec generic_point(const std::vector<RatVec>& functionals, int dim) {
    if (dim == 0) return {};
    for (long long t = 1;; ++t) {
        RatVec g(dim);
        Rat p(1);
        for (int i = 0; i < dim; ++i) {
            g[i] = p;
            p *= Rat(t);
        }
        bool ok = true;
        for (const auto& f : functionals)
            if (rv_dot(f, g).is_zero()) {
                ok = false;
                break;
            }
        if (ok) return g;
        if (t > 1000) fail(Err::InternalError, "no generic point found");
    }
}

}  // namespace

void RootSystemView::validate() const {
    if (roots.size() != coroots.size())
        fail(Err::ValidationError, "view roots and coroots differ in length");
    for (int i = 0; i < num_roots(); ++i) {
        if (rv_dot(roots[i], coroots[i]) != Rat(2))
            fail(Err::PairingNotTwo, "view pairing is " + rv_dot(roots[i], coroots[i]).str());
        for (int j = 0; j < num_roots(); ++j) {
            RatVec img = rv_sub(coroots[j], rv_scale(rv_dot(roots[i], coroots[j]), coroots[i]));
            bool found = false;
            for (int k = 0; k < num_roots(); ++k)
                if (coroots[k] == img) {
                    found = true;
                    break;
                }
            if (!found) fail(Err::ReflectionEscapesRootSet, "wall reflection escapes the view");
        }
    }
}

int RootSystemView::root_index(const RatVec& functional) const {
    for (int i = 0; i < num_roots(); ++i)
        if (roots[i] == functional) return i;
    return -1;
}

ViewWeyl::ViewWeyl(const RootSystemView& view, long long cap) {
    int dim = view.dim;
    if (view.empty() || dim == 0) {
        ViewWeylElement id{RatMat::identity(dim), RatMat::identity(dim), 0, 1};
        index_[id.point_mat.a] = 0;
        elems_.push_back(std::move(id));
        minus_one_ = dim == 0 ? std::optional<int>(0) : std::nullopt;
        return;
    }

    RatVec g = generic_point(view.roots, dim);
    std::vector<int> positives;
    for (int i = 0; i < view.num_roots(); ++i)
        if (rv_dot(view.roots[i], g) > Rat(0)) positives.push_back(i);
    for (int i : positives) {
        bool decomposable = false;
        for (int j : positives) {
            if (decomposable) break;
            for (int k : positives)
                if (rv_add(view.roots[j], view.roots[k]) == view.roots[i]) {
                    decomposable = true;
                    break;
                }
        }
        if (!decomposable) simple_roots_.push_back(i);
    }

    std::vector<ViewWeylElement> gens;
    for (int i : simple_roots_)
        gens.push_back({reflection_point_mat(dim, view.roots[i], view.coroots[i]),
                        reflection_funct_mat(dim, view.roots[i], view.coroots[i]), 1, -1});

    ViewWeylElement id{RatMat::identity(dim), RatMat::identity(dim), 0, 1};
    std::vector<ViewWeylElement> found{id};
    std::map<std::vector<Rat>, int> seen{{id.point_mat.a, 0}};
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            RatMat m = found[cur].point_mat.mul(s.point_mat);
            if (seen.count(m.a)) continue;
            if (static_cast<long long>(found.size()) >= cap)
                fail(Err::WeylCapExceeded, "view Weyl group exceeds cap");
            ViewWeylElement w;
            w.point_mat = std::move(m);
            w.funct_mat = found[cur].funct_mat.mul(s.funct_mat);
            w.length = found[cur].length + 1;
            w.sign = -found[cur].sign;
            seen[w.point_mat.a] = static_cast<int>(found.size());
            found.push_back(std::move(w));
            queue.push_back(static_cast<int>(found.size()) - 1);
        }
    }
    std::sort(found.begin(), found.end(), [](const ViewWeylElement& a, const ViewWeylElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.point_mat.a < b.point_mat.a;
    });
    elems_ = std::move(found);
    for (int i = 0; i < size(); ++i) index_[elems_[i].point_mat.a] = i;

    RatMat neg(dim, dim);
    for (int i = 0; i < dim; ++i) neg.at(i, i) = Rat(-1);
    auto it = index_.find(neg.a);
    if (it != index_.end()) minus_one_ = it->second;
}

int ViewWeyl::index_of_point_mat(const RatMat& m) const {
    auto it = index_.find(m.a);
    return it == index_.end() ? -1 : it->second;
}

EssentialView essentialize(const RootSystemView& v) {
    EssentialView out;
    out.ambient_dim = v.dim;
    std::vector<RatVec> span = rv_span_basis(v.coroots);
    int rank = static_cast<int>(span.size());

    if (rank == 0) {
        out.view.dim = 0;
        out.point_proj = RatMat(0, v.dim);
        out.funct_restrict = RatMat(0, v.dim);
        return out;
    }

    // Common kernel of all root functionals: the invariant complement.
    RatMat rows(v.num_roots(), v.dim);
    for (int r = 0; r < v.num_roots(); ++r)
        for (int c = 0; c < v.dim; ++c) rows.at(r, c) = v.roots[r][c];
    std::vector<RatVec> kernel = rm_kernel(rows);
    if (rank + static_cast<int>(kernel.size()) != v.dim)
        fail(Err::InternalError, "coroot span and root kernel do not decompose the space");

    // Invert [span | kernel] and keep the first `rank` rows: coordinates of
    // the projection onto the span along the kernel.
    RatMat cols(v.dim, v.dim);
    for (int j = 0; j < rank; ++j)
        for (int r = 0; r < v.dim; ++r) cols.at(r, j) = span[j][r];
    for (size_t j = 0; j < kernel.size(); ++j)
        for (int r = 0; r < v.dim; ++r) cols.at(r, rank + static_cast<int>(j)) = kernel[j][r];

    RatMat inv(v.dim, v.dim);
    {
        RatMat work = cols;
        RatMat id = RatMat::identity(v.dim);
        for (int col = 0; col < v.dim; ++col) {
            int piv = -1;
            for (int r = col; r < v.dim; ++r)
                if (!work.at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail(Err::InternalError, "essentialize basis is singular");
            if (piv != col)
                for (int c = 0; c < v.dim; ++c) {
                    std::swap(work.at(piv, c), work.at(col, c));
                    std::swap(id.at(piv, c), id.at(col, c));
                }
            Rat s = Rat(1) / work.at(col, col);
            for (int c = 0; c < v.dim; ++c) {
                work.at(col, c) *= s;
                id.at(col, c) *= s;
            }
            for (int r = 0; r < v.dim; ++r) {
                if (r == col || work.at(r, col).is_zero()) continue;
                Rat f = work.at(r, col);
                for (int c = 0; c < v.dim; ++c) {
                    work.at(r, c) -= f * work.at(col, c);
                    id.at(r, c) -= f * id.at(col, c);
                }
            }
        }
        inv = std::move(id);
    }

    out.point_proj = RatMat(rank, v.dim);
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < v.dim; ++c) out.point_proj.at(r, c) = inv.at(r, c);

    out.funct_restrict = RatMat(rank, v.dim);
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < v.dim; ++c) out.funct_restrict.at(r, c) = span[r][c];

    out.view.dim = rank;
    for (int i = 0; i < v.num_roots(); ++i) {
        out.view.roots.push_back(out.funct_restrict.apply(v.roots[i]));
        out.view.coroots.push_back(out.point_proj.apply(v.coroots[i]));
    }
    return out;
}

RootSystemView datum_view(const RealRootDatum& datum) {
    RootSystemView v;
    v.dim = datum.rank();
    for (int i = 0; i < datum.num_roots(); ++i) {
        v.roots.push_back(to_rat(datum.root_coords()[i]));
        v.coroots.push_back(to_rat(datum.coroot_coords()[i]));
    }
    return v;
}

EssentialView real_root_view(const RealRootDatum& datum) {
    RootSystemView v;
    v.dim = datum.rank();
    for (int i : datum.classification().real_roots) {
        v.roots.push_back(to_rat(datum.root_coords()[i]));
        v.coroots.push_back(to_rat(datum.coroot_coords()[i]));
    }
    return essentialize(v);
}

RatVec WallSystem::wall_point(const RatVec& parent_point) const {
    return point_to_wall.apply(parent_point);
}

RatVec WallSystem::wall_functional(const RatVec& parent_functional) const {
    return funct_to_wall.apply(parent_functional);
}

ChamberComplex::ChamberComplex(RootSystemView view, long long weyl_cap)
    : view_(std::move(view)), weyl_cap_(weyl_cap) {
    if (!view_.empty()) {
        std::vector<RatVec> span = rv_span_basis(view_.coroots);
        if (static_cast<int>(span.size()) != view_.dim)
            fail(Err::InternalError, "ChamberComplex expects an essential view");
    }
    std::vector<RatVec> functionals = view_.roots;
    arr_ = Arrangement::build(view_.dim, functionals);
    weyl_ = ViewWeyl(view_, weyl_cap_);

    if (view_.empty()) {
        chambers_.push_back({{}, RatVec(view_.dim)});
        chamber_by_signs_[{}] = 0;
        chamber_rep_.push_back(0);
        return;
    }

    // Chambers as the Weyl orbit of a generic seed.
    RatVec seed = generic_point(view_.roots, view_.dim);
    std::map<std::vector<int8_t>, std::pair<RatVec, int>> found;
    for (int w = 0; w < weyl_.size(); ++w) {
        RatVec pt = weyl_[w].point_mat.apply(seed);
        auto signs = arr_.sign_vector(pt);
        if (!found.count(signs)) found[signs] = {std::move(pt), w};
    }
    if (static_cast<int>(found.size()) != weyl_.size())
        fail(Err::InternalError, "Weyl group does not act simply transitively on chambers");
    for (auto& [signs, data] : found) {
        chamber_by_signs_[signs] = static_cast<int>(chambers_.size());
        chambers_.push_back({signs, std::move(data.first)});
        chamber_rep_.push_back(data.second);
    }
    // chamber_rep_ maps chamber -> w with chamber = w * base; the seed chamber
    // is the one whose representative is the identity.
    for (size_t c = 0; c < chambers_.size(); ++c)
        if (chamber_rep_[c] == 0) base_chamber_ = static_cast<int>(c);

    facets_ = enumerate_facets(arr_, chambers_);
    for (size_t f = 0; f < facets_.size(); ++f)
        facet_by_key_[{facets_[f].wall, facets_[f].signs}] = static_cast<int>(f);

    // Simple roots for the base chamber: positives indecomposable there.
    const RatVec& base_witness = chambers_[base_chamber_].witness;
    std::vector<int> positives;
    for (int i = 0; i < view_.num_roots(); ++i)
        if (rv_dot(view_.roots[i], base_witness) > Rat(0)) positives.push_back(i);
    for (int i : positives) {
        bool decomposable = false;
        for (int j : positives) {
            if (decomposable) break;
            for (int k : positives)
                if (rv_add(view_.roots[j], view_.roots[k]) == view_.roots[i]) {
                    decomposable = true;
                    break;
                }
        }
        if (!decomposable) simple_functionals_.push_back(i);
    }
    if (static_cast<int>(simple_functionals_.size()) != view_.dim)
        fail(Err::InternalError, "simple system size differs from rank");
}

int ChamberComplex::chamber_index(const std::vector<int8_t>& signs) const {
    auto it = chamber_by_signs_.find(signs);
    if (it == chamber_by_signs_.end()) fail(Err::InternalError, "unknown chamber sign vector");
    return it->second;
}

int ChamberComplex::chamber_of(const RatVec& point) const {
    auto signs = arr_.sign_vector(point);
    for (int8_t s : signs)
        if (s == 0)
            fail(Err::IrregularCharacter, "point lies on a root hyperplane");
    return chamber_index(signs);
}

const ChamberComplex::HyperplaneAction& ChamberComplex::action_of(int weyl_elem) const {
    auto it = action_cache_.find(weyl_elem);
    if (it != action_cache_.end()) return it->second;
    HyperplaneAction act;
    act.perm.resize(arr_.size());
    act.flip.resize(arr_.size());
    const RatMat& fm = weyl_[weyl_elem].funct_mat;
    for (int h = 0; h < arr_.size(); ++h) {
        RatVec img = fm.apply(arr_.hyperplane(h).normal);
        bool matched = false;
        for (int k = 0; k < arr_.size() && !matched; ++k) {
            // img proportional to normal k with rational factor
            const RatVec& n = arr_.hyperplane(k).normal;
            Rat factor;
            bool ok = true;
            bool have = false;
            for (int c = 0; c < arr_.dim(); ++c) {
                if (n[c].is_zero() != img[c].is_zero()) {
                    ok = false;
                    break;
                }
                if (!n[c].is_zero()) {
                    Rat f = img[c] / n[c];
                    if (have && f != factor) {
                        ok = false;
                        break;
                    }
                    factor = f;
                    have = true;
                }
            }
            if (ok && have) {
                act.perm[h] = k;
                act.flip[h] = static_cast<int8_t>(factor.sign());
                matched = true;
            }
        }
        if (!matched) fail(Err::InternalError, "Weyl element does not permute hyperplanes");
    }
    return action_cache_.emplace(weyl_elem, std::move(act)).first->second;
}

int ChamberComplex::chamber_action(int weyl_elem, int chamber) const {
    const auto& act = action_of(weyl_elem);
    std::vector<int8_t> out(arr_.size());
    const auto& signs = chambers_[chamber].signs;
    for (int h = 0; h < arr_.size(); ++h)
        out[act.perm[h]] = static_cast<int8_t>(act.flip[h] * signs[h]);
    return chamber_index(out);
}

int ChamberComplex::facet_action(int weyl_elem, int facet) const {
    const auto& act = action_of(weyl_elem);
    std::vector<int8_t> out(arr_.size());
    const auto& signs = facets_[facet].signs;
    for (int h = 0; h < arr_.size(); ++h)
        out[act.perm[h]] = static_cast<int8_t>(act.flip[h] * signs[h]);
    return facet_index(act.perm[facets_[facet].wall], out);
}

int ChamberComplex::facet_index(int wall, const std::vector<int8_t>& signs) const {
    auto it = facet_by_key_.find({wall, signs});
    if (it == facet_by_key_.end()) fail(Err::InternalError, "unknown facet key");
    return it->second;
}

bool ChamberComplex::lambda_in_dual_cone(int chamber, const RatVec& lambda) const {
    if (view_.empty()) return true;
    int w = chamber_rep_[chamber];
    auto it = dual_solver_cache_.find(w);
    if (it == dual_solver_cache_.end()) {
        // Columns: images of the simple functionals under w.
        RatMat A(view_.dim, view_.dim);
        const RatMat& fm = weyl_[w].funct_mat;
        for (int j = 0; j < view_.dim; ++j) {
            RatVec col = fm.apply(view_.roots[simple_functionals_[j]]);
            for (int r = 0; r < view_.dim; ++r) A.at(r, j) = col[r];
        }
        it = dual_solver_cache_.emplace(w, std::move(A)).first;
    }
    auto sol = rm_solve(it->second, lambda);
    if (!sol) fail(Err::InternalError, "dual cone solve failed on a basis");
    for (const auto& c : *sol)
        if (c < Rat(0)) return false;
    return true;
}

bool ChamberComplex::lambda_in_dual_chamber(int chamber, const RatVec& lambda) const {
    if (view_.empty()) return true;
    const RatVec& witness = chambers_[chamber].witness;
    for (int i = 0; i < view_.num_roots(); ++i) {
        if (rv_dot(view_.roots[i], witness) <= Rat(0)) continue;
        if (rv_dot(lambda, view_.coroots[i]) <= Rat(0)) return false;
    }
    return true;
}

const WallSystem& ChamberComplex::wall(int hyperplane) const {
    auto it = wall_cache_.find(hyperplane);
    if (it != wall_cache_.end()) return *it->second;

    auto ws = std::make_unique<WallSystem>();
    ws->hyperplane = hyperplane;
    const RatVec& normal = arr_.hyperplane(hyperplane).normal;

    RatMat row(1, view_.dim);
    for (int c = 0; c < view_.dim; ++c) row.at(0, c) = normal[c];
    std::vector<RatVec> basis = rm_kernel(row);
    int wdim = static_cast<int>(basis.size());

    // point_to_wall = (B^T B)^{-1} B^T, valid for points inside the wall.
    RatMat B(view_.dim, wdim);
    for (int j = 0; j < wdim; ++j)
        for (int r = 0; r < view_.dim; ++r) B.at(r, j) = basis[j][r];
    RatMat Bt = B.transpose();
    RatMat G = Bt.mul(B);
    RatMat Ginv = RatMat::identity(wdim);
    {
        RatMat work = G;
        for (int col = 0; col < wdim; ++col) {
            int piv = -1;
            for (int r = col; r < wdim; ++r)
                if (!work.at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail(Err::InternalError, "wall basis Gram matrix singular");
            if (piv != col)
                for (int c = 0; c < wdim; ++c) {
                    std::swap(work.at(piv, c), work.at(col, c));
                    std::swap(Ginv.at(piv, c), Ginv.at(col, c));
                }
            Rat s = Rat(1) / work.at(col, col);
            for (int c = 0; c < wdim; ++c) {
                work.at(col, c) *= s;
                Ginv.at(col, c) *= s;
            }
            for (int r = 0; r < wdim; ++r) {
                if (r == col || work.at(r, col).is_zero()) continue;
                Rat f = work.at(r, col);
                for (int c = 0; c < wdim; ++c) {
                    work.at(r, c) -= f * work.at(col, c);
                    Ginv.at(r, c) -= f * Ginv.at(col, c);
                }
            }
        }
    }
    ws->point_to_wall = Ginv.mul(Bt);
    ws->funct_to_wall = Bt;

    RootSystemView wall_view;
    wall_view.dim = wdim;
    for (int i = 0; i < view_.num_roots(); ++i) {
        if (!rv_dot(normal, view_.coroots[i]).is_zero()) continue;
        ws->parent_roots.push_back(i);
        wall_view.roots.push_back(ws->funct_to_wall.apply(view_.roots[i]));
        wall_view.coroots.push_back(ws->point_to_wall.apply(view_.coroots[i]));
    }
    ws->essential = essentialize(wall_view);
    ws->complex = std::make_unique<ChamberComplex>(ws->essential.view, weyl_cap_);

    return *wall_cache_.emplace(hyperplane, std::move(ws)).first->second;
}

std::vector<WallCount> wall_facet_counts(const ChamberComplex& cx) {
    std::vector<WallCount> out;
    std::map<int, std::vector<int>> by_wall;
    for (size_t f = 0; f < cx.facets().size(); ++f) by_wall[cx.facets()[f].wall].push_back(static_cast<int>(f));
    for (int h = 0; h < cx.arrangement().size(); ++h) {
        WallCount wc;
        wc.hyperplane = h;
        auto it = by_wall.find(h);
        wc.facets_in_wall = it == by_wall.end() ? 0 : static_cast<long long>(it->second.size());
        const WallSystem& ws = cx.wall(h);
        wc.wall_weyl_order = ws.complex->weyl().size();
        if (wc.facets_in_wall % wc.wall_weyl_order != 0) {
            wc.per_chamber_uniform = false;
            wc.n_alpha = 0;
        } else {
            wc.n_alpha = wc.facets_in_wall / wc.wall_weyl_order;
            // Every wall chamber must contain the same number of facets.
            std::map<int, long long> per_chamber;
            if (it != by_wall.end())
                for (int f : it->second) {
                    RatVec wp = ws.wall_point(cx.facets()[f].witness);
                    RatVec ep = ws.essential.view.dim == 0 ? RatVec{} : ws.essential.point_proj.apply(wp);
                    per_chamber[ws.complex->chamber_of(ep)]++;
                }
            for (auto& [c, n] : per_chamber)
                if (n != wc.n_alpha) wc.per_chamber_uniform = false;
        }
        out.push_back(wc);
    }
    return out;
}

FacetOrbitData facet_orbit_data(const ChamberComplex& cx) {
    FacetOrbitData out;
    int nf = static_cast<int>(cx.facets().size());
    std::vector<int> orbit_of(nf, -1);
    std::vector<long long> orbit_size;
    std::vector<int> gen_indices;
    // The length-one elements are the simple reflections; they generate.
    for (int w = 0; w < cx.weyl().size(); ++w)
        if (cx.weyl()[w].length == 1) gen_indices.push_back(w);
    for (int f = 0; f < nf; ++f) {
        if (orbit_of[f] >= 0) continue;
        int id = static_cast<int>(orbit_size.size());
        std::deque<int> queue{f};
        orbit_of[f] = id;
        long long count = 1;
        while (!queue.empty()) {
            int cur = queue.front();
            queue.pop_front();
            for (int g : gen_indices) {
                int img = cx.facet_action(g, cur);
                if (orbit_of[img] < 0) {
                    orbit_of[img] = id;
                    ++count;
                    queue.push_back(img);
                }
            }
        }
        orbit_size.push_back(count);
    }
    out.num_orbits = static_cast<int>(orbit_size.size());
    out.stabilizer_orders.resize(nf);
    for (int f = 0; f < nf; ++f) {
        long long sz = orbit_size[orbit_of[f]];
        out.stabilizer_orders[f] = cx.weyl().size() / sz;
    }
    return out;
}

}  // namespace arthur
