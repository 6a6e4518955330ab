#pragma once

#include <random>

#include "arthur/characters.hpp"
#include "arthur/errors.hpp"
#include "arthur/root_datum.hpp"
#include "arthur/system_view.hpp"

namespace arthur {

// Deterministic sample streams for the identity suites. Rationals are kept
// small so the exact regularity filters stay cheap and the float evaluations
// stay well conditioned.
class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}

    Rat small_rat(int num_range = 12, int den_range = 6) {
        std::uniform_int_distribution<int> num(-num_range, num_range);
        std::uniform_int_distribution<int> den(1, den_range);
        return Rat(num(rng_), den(rng_));
    }

    long long small_int(long long lo, long long hi) {
        std::uniform_int_distribution<long long> d(lo, hi);
        return d(rng_);
    }

    // Coordinates in the span of the given basis with small rational weights.
    CoweightVec in_span(const std::vector<CoweightVec>& basis, int ambient) {
        CoweightVec out = CoweightVec::zero(ambient);
        for (const auto& b : basis) out = out + small_rat() * b;
        return out;
    }

    // A regular element with compact, central and probe parts; redraws until
    // every root evaluation differs from 1 (exact test) and is comfortably
    // away from it in the exponent. Magnitude parameters are kept small so
    // float identities on the evaluations stay well conditioned.
    TorusElement regular_element(const RealRootDatum& datum, bool with_probe) {
        for (int attempt = 0; attempt < 2000; ++attempt) {
            CoweightVec u = in_span(datum.compact_basis(), datum.rank());
            CoweightVec s = Rat(1, 8) * in_span(datum.ag_basis(), datum.rank());
            CoweightVec x0 = in_span(datum.am_basis(), datum.rank());
            Rat m;
            for (int i = 0; i < datum.num_roots(); ++i) {
                Rat p = pairing(datum.root(i), x0);
                if (p < Rat(0)) p = -p;
                if (p > m) m = p;
            }
            if (m > Rat(1)) x0 = (Rat(1) / m) * x0;
            Rat t = with_probe ? Rat(1, 2 + static_cast<long long>(small_int(0, 5))) : Rat(0);
            TorusElement g = TorusElement::with_probe(datum, u, s, t, x0);
            bool ok = true;
            for (int i = 0; i < datum.num_roots() && ok; ++i) {
                Rat phase = pairing(datum.root(i), g.u()).mod1();
                Rat mod = g.log_modulus(datum.root(i));
                // Distance of the phase from 0 and 1 as a rational.
                Rat dist = phase <= Rat(1, 2) ? phase : Rat(1) - phase;
                if (dist < Rat(1, 24) && (mod > Rat(-1, 16) && mod < Rat(1, 16))) ok = false;
                if (dist.is_zero() && mod.is_zero()) ok = false;
            }
            if (ok) return g;
        }
        fail(Err::InternalError, "could not sample a regular element");
    }

    TorusElement elliptic_element(const RealRootDatum& datum) {
        CoweightVec u = in_span(datum.compact_basis(), datum.rank());
        CoweightVec s = in_span(datum.ag_basis(), datum.rank());
        return TorusElement::elliptic(datum, u, s);
    }

    // Regular integral character for a chamber complex, by rejection.
    RatVec regular_functional(const ChamberComplex& cx) {
        if (cx.view().empty()) return {};
        for (int attempt = 0; attempt < 2000; ++attempt) {
            RatVec lam(cx.rank());
            for (int i = 0; i < cx.rank(); ++i) lam[i] = Rat(small_int(-9, 9));
            bool ok = !rv_is_zero(lam);
            for (const auto& cr : cx.view().coroots)
                if (!ok || rv_dot(lam, cr).is_zero()) ok = false;
            if (ok) return lam;
        }
        fail(Err::InternalError, "could not sample a regular character");
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace arthur
