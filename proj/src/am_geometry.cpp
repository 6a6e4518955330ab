#include "arthur/am_geometry.hpp"

#include "arthur/errors.hpp"

namespace arthur {

namespace {

// (B^T B)^{-1} B^T for a full-column-rank basis matrix B.
RatMat pseudo_inverse(const std::vector<CoweightVec>& basis, int ambient) {
    int d = static_cast<int>(basis.size());
    RatMat B(ambient, d);
    for (int j = 0; j < d; ++j)
        for (int r = 0; r < ambient; ++r) B.at(r, j) = basis[j].c[r];
    RatMat Bt = B.transpose();
    RatMat G = Bt.mul(B);
    RatMat Ginv = RatMat::identity(d);
    RatMat work = G;
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (!work.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) fail(Err::InternalError, "a_M basis Gram matrix singular");
        if (piv != col)
            for (int c = 0; c < d; ++c) {
                std::swap(work.at(piv, c), work.at(col, c));
                std::swap(Ginv.at(piv, c), Ginv.at(col, c));
            }
        Rat s = Rat(1) / work.at(col, col);
        for (int c = 0; c < d; ++c) {
            work.at(col, c) *= s;
            Ginv.at(col, c) *= s;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col || work.at(r, col).is_zero()) continue;
            Rat f = work.at(r, col);
            for (int c = 0; c < d; ++c) {
                work.at(r, c) -= f * work.at(col, c);
                Ginv.at(r, c) -= f * Ginv.at(col, c);
            }
        }
    }
    return Ginv.mul(Bt);
}

}  // namespace

AmGeometry::AmGeometry(const RealRootDatum& datum, const WeylGroup& weyl)
    : datum_(&datum), weyl_(&weyl), basis_(datum.am_basis()) {
    int ambient = datum.rank();
    if (!basis_.empty()) coords_solver_ = pseudo_inverse(basis_, ambient);

    std::vector<RatVec> p_functionals, l_functionals;
    for (int i = 0; i < datum.num_roots(); ++i) {
        if (datum.is_imaginary(i)) continue;
        RatVec f = restrict_weight(datum.root(i));
        if (rv_is_zero(f))
            fail(Err::InternalError,
                 "non-imaginary root restricts to zero on a_M; datum is inconsistent");
        p_sources_.push_back(i);
        p_functionals.push_back(f);
        if (datum.is_real(i)) {
            l_sources_.push_back(i);
            l_functionals.push_back(std::move(f));
        }
    }
    p_arr_ = Arrangement::build(dim(), p_functionals);
    l_arr_ = Arrangement::build(dim(), l_functionals);
    p_chambers_ = enumerate_chambers(p_arr_);
    l_chambers_ = enumerate_chambers(l_arr_);

    wl_ = weyl.reflection_subgroup(datum.classification().real_roots);

    // W_L must act simply transitively on the L-chambers.
    if (static_cast<long long>(wl_.size()) != static_cast<long long>(l_chambers_.size()))
        fail(Err::SimpleTransitivityFailure,
             "|W_L| = " + std::to_string(wl_.size()) + " but " + std::to_string(l_chambers_.size()) +
                 " L-chambers");
    l_rep_.assign(l_chambers_.size(), -1);
    base_l_ = 0;
    std::vector<int> hits(l_chambers_.size(), 0);
    for (size_t k = 0; k < wl_.size(); ++k) {
        int img = wl_action_on_l(wl_[k], base_l_);
        hits[img]++;
        if (l_rep_[img] < 0) l_rep_[img] = static_cast<int>(k);
    }
    for (size_t lc = 0; lc < l_chambers_.size(); ++lc)
        if (hits[lc] != 1)
            fail(Err::SimpleTransitivityFailure,
                 "W_L orbit of the base L-chamber hits chamber " + std::to_string(lc) + " " +
                     std::to_string(hits[lc]) + " times");
}

RatVec AmGeometry::am_coords(const CoweightVec& x) const {
    if (basis_.empty()) {
        if (!x.is_zero()) fail(Err::InternalError, "nonzero point in a trivial a_M");
        return {};
    }
    RatVec coords = coords_solver_.apply(x.c);
    // Consistency: the point must actually lie in a_M.
    CoweightVec back = from_am(coords);
    if (!(back == x)) fail(Err::InternalError, "point does not lie in a_M");
    return coords;
}

CoweightVec AmGeometry::from_am(const RatVec& coords) const {
    CoweightVec out = CoweightVec::zero(datum_->rank());
    for (size_t j = 0; j < basis_.size(); ++j) out = out + coords[j] * basis_[j];
    return out;
}

RatVec AmGeometry::restrict_weight(const WeightVec& w) const {
    RatVec out(basis_.size());
    for (size_t j = 0; j < basis_.size(); ++j) out[j] = pairing(w, basis_[j]);
    return out;
}

int AmGeometry::l_chamber_of_p(int pc) const {
    return l_chamber_of_point(p_chambers_[pc].witness);
}

int AmGeometry::l_chamber_of_point(const RatVec& am_point) const {
    auto signs = l_arr_.sign_vector(am_point);
    for (size_t lc = 0; lc < l_chambers_.size(); ++lc)
        if (l_chambers_[lc].signs == signs) return static_cast<int>(lc);
    fail(Err::IrregularCharacter, "point lies on a real-root hyperplane of a_M");
}

std::vector<int> AmGeometry::parabolic_of_p(int pc) const {
    std::vector<int> out;
    const RatVec& x = p_chambers_[pc].witness;
    for (int i : p_sources_) {
        Rat v = rv_dot(restrict_weight(datum_->root(i)), x);
        if (v > Rat(0)) out.push_back(i);
    }
    return out;
}

std::vector<int> AmGeometry::positive_reals_of_l(int lc) const {
    std::vector<int> out;
    const RatVec& x = l_chambers_[lc].witness;
    for (int i : l_sources_) {
        Rat v = rv_dot(restrict_weight(datum_->root(i)), x);
        if (v > Rat(0)) out.push_back(i);
    }
    return out;
}

int AmGeometry::wl_action_on_l(int weyl_index, int lc) const {
    const WeylElement& w = (*weyl_)[weyl_index];
    CoweightVec moved = w.apply(from_am(l_chambers_[lc].witness));
    return l_chamber_of_point(am_coords(moved));
}

}  // namespace arthur
