#include "arthur/rational.hpp"

#include <ostream>

#include "arthur/errors.hpp"

namespace arthur {

Rat::Rat(long long num, long long den) {
    if (den == 0) fail(Err::ParseError, "rational with zero denominator");
    v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    v_.canonicalize();
}

Rat::Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rat Rat::parse(const std::string& s) {
    if (s.empty()) fail(Err::ParseError, "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(s);
            q.canonicalize();
            return Rat(std::move(q));
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return Rat(std::move(q));
    } catch (const std::invalid_argument&) {
        fail(Err::ParseError, "malformed rational literal '" + s + "'");
    }
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) fail(Err::InternalError, "rational division by zero");
    v_ /= o.v_;
    return *this;
}

long long Rat::to_int() const {
    if (!is_integer()) fail(Err::NotIntegral, "expected integer, got " + str());
    if (!v_.get_num().fits_slong_p()) fail(Err::InternalError, "integer overflow in to_int");
    return v_.get_num().get_si();
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::mod1() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    mpq_class r = v_ - mpq_class(q);
    r.canonicalize();
    return Rat(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

const char* err_name(Err e) {
    switch (e) {
        case Err::NotAnInvolution: return "NotAnInvolution";
        case Err::SigmaNotRootPermutation: return "SigmaNotRootPermutation";
        case Err::PairingNotTwo: return "PairingNotTwo";
        case Err::ReflectionEscapesRootSet: return "ReflectionEscapesRootSet";
        case Err::NonReducedSystem: return "NonReducedSystem";
        case Err::WeylCapExceeded: return "WeylCapExceeded";
        case Err::ArrangementCapExceeded: return "ArrangementCapExceeded";
        case Err::SimpleTransitivityFailure: return "SimpleTransitivityFailure";
        case Err::IrregularCharacter: return "IrregularCharacter";
        case Err::RecursionInconsistent: return "RecursionInconsistent";
        case Err::MinusOneNotInWeylGroup: return "MinusOneNotInWeylGroup";
        case Err::Lambda0NotInDualCone: return "Lambda0NotInDualCone";
        case Err::IdentityViolated: return "IdentityViolated";
        case Err::IrregularElement: return "IrregularElement";
        case Err::DegenerateProjection: return "DegenerateProjection";
        case Err::NotDominant: return "NotDominant";
        case Err::NotIntegral: return "NotIntegral";
        case Err::NonIntegralQ: return "NonIntegralQ";
        case Err::ParseError: return "ParseError";
        case Err::ValidationError: return "ValidationError";
        case Err::InternalError: return "InternalError";
    }
    return "UnknownError";
}

}  // namespace arthur
