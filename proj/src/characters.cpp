#include "arthur/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "arthur/errors.hpp"

namespace arthur {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;
}

TorusElement TorusElement::elliptic(const RealRootDatum& datum, CoweightVec u, CoweightVec s) {
    return with_probe(datum, std::move(u), std::move(s), Rat(0), CoweightVec::zero(datum.rank()));
}

TorusElement TorusElement::with_probe(const RealRootDatum& datum, CoweightVec u, CoweightVec s,
                                      Rat t, CoweightVec x0) {
    if (!datum.in_compact_part(u))
        fail(Err::ValidationError, "compact parameter is not in the (-1)-eigenspace of sigma");
    if (!datum.in_ag(s)) fail(Err::ValidationError, "split parameter is not in a_G");
    if (!datum.in_am(x0)) fail(Err::ValidationError, "probe direction is not in a_M");
    TorusElement g;
    g.u_ = std::move(u);
    g.s_ = std::move(s);
    g.t_ = std::move(t);
    g.x0_ = std::move(x0);
    return g;
}

Cplx TorusElement::eval(const WeightVec& lambda) const {
    Rat phase = pairing(lambda, u_).mod1();
    Rat expo = log_modulus(lambda);
    double mag = std::exp(expo.to_double());
    double ang = kTwoPi * phase.to_double();
    return Cplx(mag * std::cos(ang), mag * std::sin(ang));
}

bool TorusElement::eval_is_one(const WeightVec& lambda) const {
    return pairing(lambda, u_).mod1().is_zero() && log_modulus(lambda).is_zero();
}

Rat TorusElement::log_modulus(const WeightVec& lambda) const {
    return pairing(lambda, s_) + t_ * pairing(lambda, x0_);
}

TorusElement TorusElement::inverse() const {
    TorusElement g = *this;
    g.u_ = -g.u_;
    g.s_ = -g.s_;
    g.t_ = -g.t_;
    return g;
}

TorusElement TorusElement::at_probe_scale(const Rat& t) const {
    TorusElement g = *this;
    g.t_ = t;
    return g;
}

BorelChoice make_borel(const RealRootDatum& datum, std::vector<int> positive_indices) {
    std::sort(positive_indices.begin(), positive_indices.end());
    BorelChoice b;
    b.positive = positive_indices;
    b.positive_mask.assign(datum.num_roots(), 0);
    for (int i : b.positive) b.positive_mask[i] = 1;

    if (2 * static_cast<int>(b.positive.size()) != datum.num_roots())
        fail(Err::ValidationError, "positive system has the wrong size");
    for (int i = 0; i < datum.num_roots(); ++i)
        if (b.positive_mask[i] == b.positive_mask[datum.negative_of(i)])
            fail(Err::ValidationError, "positive system must contain exactly one of each root pair");
    for (int i : b.positive)
        for (int j : b.positive) {
            IntVec sum(datum.rank());
            for (int c = 0; c < datum.rank(); ++c)
                sum[c] = datum.root_coords()[i][c] + datum.root_coords()[j][c];
            int k = datum.root_index(sum);
            if (k >= 0 && !b.positive_mask[k])
                fail(Err::ValidationError, "positive system is not closed under addition");
        }

    for (int i : b.positive) {
        if (datum.is_imaginary(i))
            b.m_positive.push_back(i);
        else
            b.nilradical.push_back(i);
    }
    // The nilradical must be the root set of an actual parabolic with Levi M:
    // stable under the reflections in imaginary roots.
    for (int beta : datum.classification().imaginary_roots) {
        WeylElement s = datum.reflection(beta);
        for (int alpha : b.nilradical) {
            int img = datum.root_index(s.mat.apply(datum.root_coords()[alpha]));
            if (!b.positive_mask[img] || datum.is_imaginary(img))
                fail(Err::ValidationError,
                     "positive system is not compatible with a parabolic having Levi M");
        }
    }
    return b;
}

BorelChoice borel_from_point(const RealRootDatum& datum, const CoweightVec& generic) {
    std::vector<int> pos;
    for (int i = 0; i < datum.num_roots(); ++i) {
        Rat p = pairing(datum.root(i), generic);
        if (p.is_zero()) fail(Err::ValidationError, "base point is not regular");
        if (p > Rat(0)) pos.push_back(i);
    }
    return make_borel(datum, std::move(pos));
}

std::vector<BorelChoice> compatible_borels(const RealRootDatum& datum, const WeylGroup& weyl,
                                           const AmGeometry& am, int lchamber) {
    // P-chambers inside the L-chamber give the candidate nilradicals; the
    // imaginary positive systems are the W_M-orbit of any one of them.
    std::vector<std::vector<int>> m_positives;
    {
        CoweightVec g = generic_coweight(datum);
        std::vector<int> base;
        for (int i : datum.classification().imaginary_roots)
            if (pairing(datum.root(i), g) > Rat(0)) base.push_back(i);
        std::vector<int> wm = weyl.reflection_subgroup(datum.classification().imaginary_roots);
        std::vector<std::vector<int>> seen;
        for (int w : wm) {
            std::vector<int> img;
            for (int i : base) {
                IntVec coords = weyl[w].mat.apply(datum.root_coords()[i]);
                img.push_back(datum.root_index(coords));
            }
            std::sort(img.begin(), img.end());
            if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
        }
        m_positives = std::move(seen);
        std::sort(m_positives.begin(), m_positives.end());
    }

    std::vector<BorelChoice> out;
    for (size_t pc = 0; pc < am.p_chambers().size(); ++pc) {
        if (am.l_chamber_of_p(static_cast<int>(pc)) != lchamber) continue;
        std::vector<int> rn = am.parabolic_of_p(static_cast<int>(pc));
        for (const auto& mp : m_positives) {
            std::vector<int> pos = rn;
            pos.insert(pos.end(), mp.begin(), mp.end());
            out.push_back(make_borel(datum, std::move(pos)));
        }
    }
    return out;
}

WeightVec rho_of(const RealRootDatum& datum, const std::vector<int>& positive) {
    WeightVec sum = WeightVec::zero(datum.rank());
    for (int i : positive) sum = sum + datum.root(i);
    return Rat(1, 2) * sum;
}

Cplx delta_product(const RealRootDatum& datum, const TorusElement& gamma,
                   const std::vector<int>& roots) {
    Cplx prod(1.0, 0.0);
    for (int i : roots) {
        WeightVec neg = -datum.root(i);
        if (gamma.eval_is_one(neg))
            fail(Err::IrregularElement, "delta factor vanishes at this element");
        prod *= Cplx(1.0, 0.0) - gamma.eval(neg);
    }
    return prod;
}

double modulus_delta_P(const RealRootDatum& datum, const TorusElement& gamma,
                       const std::vector<int>& nilradical) {
    Rat expo;
    for (int i : nilradical) expo += gamma.log_modulus(datum.root(i));
    return std::exp(expo.to_double());
}

double modulus_delta_P_sqrt(const RealRootDatum& datum, const TorusElement& gamma,
                            const std::vector<int>& nilradical) {
    Rat expo;
    for (int i : nilradical) expo += gamma.log_modulus(datum.root(i));
    return std::exp((expo / Rat(2)).to_double());
}

bool delta_quotient_identity(const RealRootDatum& datum, const WeylElement& w,
                             const BorelChoice& borel, const TorusElement& gamma, double tol) {
    std::vector<int> moved;
    for (int i : borel.positive) {
        IntVec coords = w.mat.apply(datum.root_coords()[i]);
        moved.push_back(datum.root_index(coords));
    }
    Cplx lhs = delta_product(datum, gamma, moved) / delta_product(datum, gamma, borel.positive);
    WeightVec rho = rho_of(datum, borel.positive);
    WeightVec diff = rho - w.apply(rho);
    Cplx rhs = static_cast<double>(w.sign) * gamma.eval(diff);
    return std::abs(lhs - rhs) <= tol * (1.0 + std::abs(rhs));
}

std::vector<int> kostant_reps(const RealRootDatum& datum, const WeylGroup& weyl,
                              const BorelChoice& borel) {
    std::vector<int> out;
    for (int w = 0; w < weyl.size(); ++w) {
        int winv = weyl.inverse(w);
        bool ok = true;
        for (int i : borel.m_positive) {
            IntVec coords = weyl[winv].mat.apply(datum.root_coords()[i]);
            int k = datum.root_index(coords);
            if (!borel.positive_mask[k]) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(w);
    }
    return out;
}

WlmData wlm_reps(const RealRootDatum& datum, const WeylGroup& weyl, const AmGeometry& am,
                 const BorelChoice& borel, int lchamber, const WeightVec& lambda_B) {
    WlmData out;
    out.wl = weyl.reflection_subgroup(datum.classification().real_roots);
    out.wm = weyl.reflection_subgroup(datum.classification().imaginary_roots);
    out.lambda0 = datum.project_pG(lambda_B);

    std::vector<int> kostant = kostant_reps(datum, weyl, borel);
    if (static_cast<int>(kostant.size()) * static_cast<int>(out.wm.size()) != weyl.size())
        fail(Err::InternalError, "Kostant set size mismatch");

    // Simple coroots of the positive real system attached to the L-chamber.
    std::vector<int> pos_real = am.positive_reals_of_l(lchamber);
    std::vector<int> simple_real;
    for (int i : pos_real) {
        bool decomposable = false;
        for (int j : pos_real) {
            if (decomposable) break;
            for (int k : pos_real) {
                IntVec sum(datum.rank());
                for (int c = 0; c < datum.rank(); ++c)
                    sum[c] = datum.root_coords()[j][c] + datum.root_coords()[k][c];
                if (sum == datum.root_coords()[i]) {
                    decomposable = true;
                    break;
                }
            }
        }
        if (!decomposable) simple_real.push_back(i);
    }

    WeightVec shift = lambda_B + rho_of(datum, borel.positive) - out.lambda0;

    // W_L-orbits on the Kostant set by left multiplication.
    std::vector<char> used(weyl.size(), 0);
    for (int omega : kostant) {
        if (used[omega]) continue;
        std::vector<int> orbit;
        for (int wl : out.wl) orbit.push_back(weyl.mult(wl, omega));
        for (int o : orbit) {
            if (o != omega && std::find(kostant.begin(), kostant.end(), o) == kostant.end())
                fail(Err::InternalError, "W_L does not preserve the Kostant set");
            used[o] = 1;
        }

        std::vector<int> strict;
        for (int o : orbit) {
            WeightVec v = weyl[o].apply(shift);
            bool ok = true;
            for (int i : simple_real) {
                Rat p = pairing(v, datum.coroot(i));
                if (p.is_zero())
                    fail(Err::DegenerateProjection,
                         "projected weight lies on a real-root wall");
                if (p < Rat(0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) strict.push_back(o);
        }
        if (strict.empty())
            fail(Err::DegenerateProjection, "no orbit member is dominant for the L-chamber");
        if (strict.size() > 1) {
            std::sort(strict.begin(), strict.end());
            strict.erase(std::unique(strict.begin(), strict.end()), strict.end());
            if (strict.size() > 1)
                fail(Err::InternalError, "multiple dominant members in a W_L-orbit");
        }
        out.reps.push_back(strict[0]);
    }
    std::sort(out.reps.begin(), out.reps.end());

    long long expected = static_cast<long long>(weyl.size()) /
                         (static_cast<long long>(out.wl.size()) * static_cast<long long>(out.wm.size()));
    if (static_cast<long long>(out.reps.size()) != expected)
        fail(Err::InternalError, "wrong number of double-coset representatives");
    return out;
}

WeightVec chi_weight(const WeylGroup& weyl, int w_l, int omega, const WeightVec& lambda_plus_rho) {
    WeightVec om = weyl[omega].apply(lambda_plus_rho);
    return weyl[weyl.mult(w_l, omega)].apply(lambda_plus_rho) - om;
}

Subsystem m_subsystem(const RealRootDatum& datum, const BorelChoice& borel) {
    Subsystem s;
    s.roots = datum.classification().imaginary_roots;
    s.positive = borel.m_positive;
    return s;
}

Subsystem full_subsystem(const RealRootDatum& datum, const BorelChoice& borel) {
    Subsystem s;
    s.roots.resize(datum.num_roots());
    for (int i = 0; i < datum.num_roots(); ++i) s.roots[i] = i;
    s.positive = borel.positive;
    return s;
}

namespace {

Rat bform(const RealRootDatum& datum, const Subsystem& sub, const WeightVec& a,
          const WeightVec& b) {
    Rat s;
    for (int i : sub.roots) s += pairing(a, datum.coroot(i)) * pairing(b, datum.coroot(i));
    return s;
}

std::vector<int> simple_positives(const RealRootDatum& datum, const std::vector<int>& positive) {
    std::vector<int> simples;
    for (int i : positive) {
        bool decomposable = false;
        for (int j : positive) {
            if (decomposable) break;
            for (int k : positive) {
                IntVec sum(datum.rank());
                for (int c = 0; c < datum.rank(); ++c)
                    sum[c] = datum.root_coords()[j][c] + datum.root_coords()[k][c];
                if (sum == datum.root_coords()[i]) {
                    decomposable = true;
                    break;
                }
            }
        }
        if (!decomposable) simples.push_back(i);
    }
    return simples;
}

std::string cache_key(const Subsystem& sub, const WeightVec& mu) {
    std::ostringstream os;
    os << "sub";
    for (int i : sub.positive) os << "_" << i;
    os << "_mu";
    for (const auto& x : mu.c) os << "_" << x.str();
    std::string key = os.str();
    for (auto& ch : key)
        if (ch == '/') ch = 'q';
    return key;
}

}  // namespace

WeightTable weight_multiplicities(const RealRootDatum& datum, const Subsystem& sub,
                                  const WeightVec& mu) {
    for (int i : sub.positive) {
        Rat p = pairing(mu, datum.coroot(i));
        if (!p.is_integer()) fail(Err::NotIntegral, "highest weight pairing " + p.str());
        if (p < Rat(0)) fail(Err::NotDominant, "highest weight not dominant for the subsystem");
    }

    WeightTable t;
    t.mu = mu;
    if (sub.roots.empty()) {
        t.mult[mu.c] = 1;
        t.dimension = 1;
        return t;
    }

    WeightVec rho = rho_of(datum, sub.positive);
    std::vector<int> simples = simple_positives(datum, sub.positive);
    Rat top = bform(datum, sub, mu + rho, mu + rho);

    t.mult[mu.c] = 1;
    std::vector<WeightVec> frontier{mu};
    while (!frontier.empty()) {
        // Candidates one simple root lower than the current level.
        std::vector<WeightVec> candidates;
        for (const auto& nu : frontier)
            for (int s : simples) {
                WeightVec cand = nu - datum.root(s);
                if (t.mult.count(cand.c)) continue;
                if (std::find(candidates.begin(), candidates.end(), cand) == candidates.end())
                    candidates.push_back(cand);
            }
        std::vector<WeightVec> next;
        for (const auto& nu : candidates) {
            Rat rhs;
            for (int i : sub.positive) {
                WeightVec alpha = datum.root(i);
                // Climb the alpha string. The norm of nu + k alpha + rho is a
                // convex parabola in k, so once it exceeds the top norm while
                // nondecreasing there are no weights further up.
                Rat prev_norm = bform(datum, sub, nu + rho, nu + rho);
                for (long long k = 1;; ++k) {
                    WeightVec up = nu + Rat(k) * alpha;
                    Rat norm = bform(datum, sub, up + rho, up + rho);
                    auto it = t.mult.find(up.c);
                    if (it != t.mult.end())
                        rhs += Rat(it->second) * bform(datum, sub, up, alpha);
                    if (norm > top && norm >= prev_norm) break;
                    prev_norm = norm;
                }
            }
            if (rhs.is_zero()) continue;  // not a weight
            Rat denom = top - bform(datum, sub, nu + rho, nu + rho);
            if (denom <= Rat(0))
                fail(Err::InternalError, "Freudenthal denominator not positive at a weight");
            Rat m = (Rat(2) * rhs) / denom;
            if (!m.is_integer() || m <= Rat(0))
                fail(Err::InternalError, "Freudenthal produced a non-positive-integer multiplicity");
            t.mult[nu.c] = m.to_int();
            next.push_back(nu);
        }
        frontier = std::move(next);
    }

    for (const auto& [w, m] : t.mult) t.dimension += m;
    return t;
}

Rat weyl_dimension(const RealRootDatum& datum, const Subsystem& sub, const WeightVec& mu) {
    if (sub.positive.empty()) return Rat(1);
    WeightVec rho = rho_of(datum, sub.positive);
    Rat num(1), den(1);
    for (int i : sub.positive) {
        num *= pairing(mu + rho, datum.coroot(i));
        den *= pairing(rho, datum.coroot(i));
    }
    return num / den;
}

const WeightTable& CharacterCache::table(const Subsystem& sub, const WeightVec& mu) {
    auto key = std::make_pair(sub.positive, mu.c);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const char* dir = std::getenv("ARTHUR_PHI_CACHE_DIR");
    std::filesystem::path file;
    if (dir && *dir) {
        file = std::filesystem::path(dir) / (cache_key(sub, mu) + ".tbl");
        std::ifstream in(file);
        if (in) {
            WeightTable t;
            t.mu = mu;
            std::string line;
            bool ok = true;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::istringstream ls(line);
                RatVec w(datum_->rank());
                std::string tok;
                for (int c = 0; c < datum_->rank() && ok; ++c) {
                    if (!(ls >> tok)) ok = false;
                    else w[c] = Rat::parse(tok);
                }
                long long m = 0;
                if (ok && (ls >> m)) {
                    t.mult[w] = m;
                    t.dimension += m;
                } else
                    ok = false;
            }
            if (ok && !t.mult.empty()) return cache_.emplace(key, std::move(t)).first->second;
        }
    }

    WeightTable t = weight_multiplicities(*datum_, sub, mu);
    if (dir && *dir) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::ofstream outf(file);
        if (outf)
            for (const auto& [w, m] : t.mult) {
                for (const auto& x : w) outf << x.str() << " ";
                outf << m << "\n";
            }
    }
    return cache_.emplace(key, std::move(t)).first->second;
}

Cplx CharacterCache::trace(const Subsystem& sub, const WeightVec& mu, const TorusElement& gamma) {
    const WeightTable& t = table(sub, mu);
    Cplx sum(0.0, 0.0);
    for (const auto& [w, m] : t.mult) sum += static_cast<double>(m) * gamma.eval(WeightVec(w));
    return sum;
}

Cplx wcf_quotient(const RealRootDatum& datum, const WeylGroup& weyl, const Subsystem& sub,
                  const WeightVec& mu, const TorusElement& gamma) {
    if (sub.roots.empty()) return gamma.eval(mu);
    for (int i : sub.roots)
        if (gamma.eval_is_one(datum.root(i)))
            fail(Err::IrregularElement, "element is irregular for the subsystem");
    WeightVec rho = rho_of(datum, sub.positive);
    std::vector<int> ws = weyl.reflection_subgroup(sub.roots);
    Cplx num(0.0, 0.0), den(0.0, 0.0);
    for (int w : ws) {
        double sign = weyl[w].sign;
        num += sign * gamma.eval(weyl[w].apply(mu + rho));
        den += sign * gamma.eval(weyl[w].apply(rho));
    }
    return num / den;
}

int longest_element(const RealRootDatum& datum, const WeylGroup& weyl, const Subsystem& sub) {
    std::vector<int> ws = weyl.reflection_subgroup(sub.roots);
    for (int w : ws) {
        bool flips_all = true;
        for (int i : sub.positive) {
            IntVec coords = weyl[w].mat.apply(datum.root_coords()[i]);
            int k = datum.root_index(coords);
            bool is_neg = false;
            for (int j : sub.positive)
                if (datum.negative_of(j) == k) {
                    is_neg = true;
                    break;
                }
            if (!is_neg) {
                flips_all = false;
                break;
            }
        }
        if (flips_all) return w;
    }
    fail(Err::InternalError, "no longest element found for the subsystem");
}

}  // namespace arthur
