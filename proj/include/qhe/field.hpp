#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qhe {

/// Exact scalar. Over F_p the value is kept as the least non-negative residue.
using Scalar = mpq_class;

enum class FieldKind { rational, prime };

/// Ground field: the rationals or a prime field F_p.
///
/// All arithmetic goes through the field so that prime-field values stay
/// reduced. Rational values are canonical (lowest terms) by construction.
class Field {
public:
    Field() = default;

    static Field rationals() { return Field{}; }
    static Field prime(unsigned long p);

    FieldKind kind() const { return kind_; }
    unsigned long modulus() const { return p_; }
    bool is_rational() const { return kind_ == FieldKind::rational; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(long v) const { return reduce(Scalar(v)); }

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
    Scalar neg(const Scalar& a) const { return reduce(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// a -= f * b, the elimination step.
    void sub_mul(Scalar& a, const Scalar& f, const Scalar& b) const;

    static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

    /// Canonical representative of an arbitrary rational in this field.
    Scalar reduce(const Scalar& a) const;

    /// Parses "3", "-2", "3/2". Over F_p the result is reduced.
    Scalar parse(std::string_view text) const;
    std::string format(const Scalar& a) const;

    std::string describe() const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }

private:
    FieldKind kind_ = FieldKind::rational;
    unsigned long p_ = 0;
};

bool is_prime(unsigned long n);

}  // namespace qhe
