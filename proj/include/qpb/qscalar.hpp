#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace qpb {

struct qpb_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signalled when a rational function is evaluated at a pole.
struct pole_error : qpb_error {
    using qpb_error::qpb_error;
};

/// Dense polynomial in q with arbitrary-precision integer coefficients.
/// coeff_[i] is the coefficient of q^i; trailing zeros are trimmed, so the
/// zero polynomial has an empty coefficient vector.
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(long constant);
    explicit ZPoly(const mpz_class& constant);
    static ZPoly monomial(const mpz_class& coeff, int degree);

    bool is_zero() const { return coeff_.empty(); }
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    const mpz_class& leading() const;
    mpz_class coeff(int degree) const;

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator-() const;
    bool operator==(const ZPoly& o) const { return coeff_ == o.coeff_; }

    /// Exact division; throws qpb_error if the division leaves a remainder.
    ZPoly divide_exact(const ZPoly& divisor) const;

    /// gcd over Z[q], normalized to positive leading coefficient.
    static ZPoly gcd(const ZPoly& a, const ZPoly& b);

    mpz_class content() const;  // gcd of coefficients, nonnegative
    mpq_class eval(const mpq_class& q0) const;

    std::string to_string() const;

  private:
    void trim();
    std::vector<mpz_class> coeff_;
};

/// Element of Q(q) in canonical form: numerator/denominator coprime in Z[q],
/// denominator nonzero with positive leading coefficient; zero is 0/1.
/// Laurent powers q^-k live as fractions with denominator q^k.
class QScalar {
  public:
    QScalar() : num_(), den_(1) {}
    QScalar(long n) : num_(n), den_(1) {}
    QScalar(const ZPoly& num, const ZPoly& den);

    static QScalar zero() { return QScalar(); }
    static QScalar one() { return QScalar(1); }
    static QScalar q_power(int k);
    /// (-q)^k
    static QScalar neg_q_power(int k);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    QScalar operator+(const QScalar& o) const;
    QScalar operator-(const QScalar& o) const;
    QScalar operator*(const QScalar& o) const;
    QScalar operator/(const QScalar& o) const;  // throws on division by zero
    QScalar operator-() const;
    QScalar inverse() const;
    QScalar pow(int e) const;
    bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }

    /// Exact evaluation at a rational point; throws pole_error if the
    /// denominator vanishes there.
    mpq_class eval(const mpq_class& q0) const;

    std::string to_string() const;

  private:
    void normalize();
    ZPoly num_, den_;
};

inline QScalar q_minus_q_inverse() {
    return QScalar::q_power(1) - QScalar::q_power(-1);
}

}  // namespace qpb
