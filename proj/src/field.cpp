#include "qhe/field.hpp"

#include "qhe/errors.hpp"

namespace qhe {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::input: return "InputError";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::dimension_not_stabilized: return "DimensionNotStabilized";
        case ErrorKind::non_split_simple: return "NonSplitSimple";
        case ErrorKind::non_admissible_relations: return "NonAdmissibleRelations";
        case ErrorKind::not_an_ideal: return "NotAnIdeal";
        case ErrorKind::not_multiplicative: return "NotMultiplicative";
        case ErrorKind::layer_not_semisimple: return "LayerNotSemisimple";
        case ErrorKind::not_graded: return "NotGraded";
        case ErrorKind::filtration_mismatch: return "FiltrationMismatch";
        case ErrorKind::splitting_not_closed: return "SplittingNotClosed";
        case ErrorKind::boundary_truncated: return "BoundaryTruncated";
        case ErrorKind::precondition: return "PreconditionUnmet";
        case ErrorKind::internal: return "InternalError";
    }
    return "Error";
}

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(unsigned long p) {
    if (!is_prime(p)) throw Error(ErrorKind::input, "field modulus " + std::to_string(p) + " is not prime");
    Field f;
    f.kind_ = FieldKind::prime;
    f.p_ = p;
    return f;
}

Scalar Field::reduce(const Scalar& a) const {
    if (kind_ == FieldKind::rational) return a;
    mpz_class p(p_);
    mpz_class num = a.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = a.get_den() % p;
    if (den == 0) throw Error(ErrorKind::input, "denominator divisible by field characteristic");
    if (den != 1) {
        mpz_class den_inv;
        mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * den_inv) % p;
    }
    return Scalar(num);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw Error(ErrorKind::internal, "division by zero");
    if (kind_ == FieldKind::rational) return Scalar(1) / a;
    mpz_class p(p_), r;
    mpz_class num = a.get_num();
    mpz_invert(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return Scalar(r);
}

void Field::sub_mul(Scalar& a, const Scalar& f, const Scalar& b) const {
    if (kind_ == FieldKind::rational) {
        a -= f * b;
        return;
    }
    mpz_class p(p_);
    mpz_class v = (a.get_num() - f.get_num() * b.get_num()) % p;
    if (v < 0) v += p;
    a = Scalar(v);
}

Scalar Field::parse(std::string_view text) const {
    std::string s(text);
    Scalar v;
    if (s.empty() || v.set_str(s, 10) != 0 || v.get_den() == 0)
        throw Error(ErrorKind::input, "cannot parse scalar '" + s + "'");
    v.canonicalize();
    return reduce(v);
}

std::string Field::format(const Scalar& a) const { return a.get_str(); }

std::string Field::describe() const {
    return kind_ == FieldKind::rational ? std::string("Q") : "F_" + std::to_string(p_);
}

}  // namespace qhe
