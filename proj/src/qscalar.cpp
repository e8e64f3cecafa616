#include "qpb/qscalar.hpp"

#include <algorithm>

namespace qpb {

ZPoly::ZPoly(long constant) {
    if (constant != 0) coeff_.push_back(mpz_class(constant));
}

ZPoly::ZPoly(const mpz_class& constant) {
    if (constant != 0) coeff_.push_back(constant);
}

ZPoly ZPoly::monomial(const mpz_class& coeff, int degree) {
    ZPoly p;
    if (coeff == 0) return p;
    p.coeff_.assign(degree + 1, mpz_class(0));
    p.coeff_[degree] = coeff;
    return p;
}

void ZPoly::trim() {
    while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
}

const mpz_class& ZPoly::leading() const {
    if (is_zero()) throw qpb_error("leading coefficient of zero polynomial");
    return coeff_.back();
}

mpz_class ZPoly::coeff(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(coeff_.size())) return 0;
    return coeff_[degree];
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    ZPoly r;
    r.coeff_.resize(std::max(coeff_.size(), o.coeff_.size()), mpz_class(0));
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] += coeff_[i];
    for (size_t i = 0; i < o.coeff_.size(); ++i) r.coeff_[i] += o.coeff_[i];
    r.trim();
    return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator-() const {
    ZPoly r(*this);
    for (auto& c : r.coeff_) c = -c;
    return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    ZPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.coeff_.assign(coeff_.size() + o.coeff_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < coeff_.size(); ++i) {
        if (coeff_[i] == 0) continue;
        for (size_t j = 0; j < o.coeff_.size(); ++j)
            r.coeff_[i + j] += coeff_[i] * o.coeff_[j];
    }
    r.trim();
    return r;
}

ZPoly ZPoly::divide_exact(const ZPoly& divisor) const {
    if (divisor.is_zero()) throw qpb_error("division by zero polynomial");
    ZPoly rem(*this), quot;
    if (rem.is_zero()) return quot;
    if (rem.degree() < divisor.degree()) throw qpb_error("inexact polynomial division");
    quot.coeff_.assign(rem.degree() - divisor.degree() + 1, mpz_class(0));
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading().get_mpz_t(),
                    divisor.leading().get_mpz_t());
        if (r != 0) throw qpb_error("inexact polynomial division");
        int shift = rem.degree() - divisor.degree();
        quot.coeff_[shift] = q;
        rem = rem - ZPoly::monomial(q, shift) * divisor;
        if (!rem.is_zero() && rem.degree() >= static_cast<int>(shift) + divisor.degree())
            throw qpb_error("inexact polynomial division");
    }
    if (!rem.is_zero()) throw qpb_error("inexact polynomial division");
    quot.trim();
    return quot;
}

mpz_class ZPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : coeff_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Primitive pseudo-remainder sequence.
ZPoly ZPoly::gcd(const ZPoly& a, const ZPoly& b) {
    auto primitive = [](ZPoly p) {
        if (p.is_zero()) return p;
        mpz_class c = p.content();
        if (p.leading() < 0) c = -c;
        for (auto& x : p.coeff_) x /= c;
        return p;
    };
    mpz_class ca = a.content(), cb = b.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), ca.get_mpz_t());
    mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), cb.get_mpz_t());
    ZPoly u = primitive(a), v = primitive(b);
    if (u.is_zero()) return ZPoly(cg) * v;
    if (v.is_zero()) return ZPoly(cg) * u;
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        // pseudo-remainder: lv^(delta+1) * u mod v stays integral
        int delta = u.degree() - v.degree();
        mpz_class lv = v.leading();
        ZPoly scaled = u;
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lv.get_mpz_t(), static_cast<unsigned long>(delta + 1));
        scaled = ZPoly(f) * scaled;
        while (!scaled.is_zero() && scaled.degree() >= v.degree()) {
            mpz_class q = scaled.leading() / lv;
            int shift = scaled.degree() - v.degree();
            scaled = scaled - ZPoly::monomial(q, shift) * v;
        }
        u = v;
        v = primitive(scaled);
    }
    u = primitive(u);
    return ZPoly(cg) * u;
}

mpq_class ZPoly::eval(const mpq_class& q0) const {
    mpq_class acc = 0;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) acc = acc * q0 + mpq_class(*it);
    return acc;
}

std::string ZPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        mpz_class c = coeff_[d];
        if (c == 0) continue;
        bool first = out.empty();
        if (c < 0) {
            out += first ? "-" : "-";
            c = -c;
        } else if (!first) {
            out += "+";
        }
        std::string cs = c.get_str();
        if (d == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += (d == 1) ? "q" : "q^" + std::to_string(d);
        }
    }
    return out;
}

QScalar::QScalar(const ZPoly& num, const ZPoly& den) : num_(num), den_(den) { normalize(); }

void QScalar::normalize() {
    if (den_.is_zero()) throw qpb_error("QScalar with zero denominator");
    if (num_.is_zero()) {
        den_ = ZPoly(1);
        return;
    }
    ZPoly g = ZPoly::gcd(num_, den_);
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

QScalar QScalar::q_power(int k) {
    if (k >= 0) return QScalar(ZPoly::monomial(1, k), ZPoly(1));
    return QScalar(ZPoly(1), ZPoly::monomial(1, -k));
}

QScalar QScalar::neg_q_power(int k) {
    QScalar r = q_power(k);
    if (k % 2 != 0) r = -r;
    return r;
}

bool QScalar::is_one() const {
    return num_.degree() == 0 && num_.coeff(0) == 1 && den_.degree() == 0 && den_.coeff(0) == 1;
}

QScalar QScalar::operator+(const QScalar& o) const {
    return QScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator-(const QScalar& o) const {
    return QScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator*(const QScalar& o) const {
    return QScalar(num_ * o.num_, den_ * o.den_);
}

QScalar QScalar::operator/(const QScalar& o) const {
    if (o.is_zero()) throw qpb_error("QScalar division by zero");
    return QScalar(num_ * o.den_, den_ * o.num_);
}

QScalar QScalar::operator-() const {
    QScalar r(*this);
    r.num_ = -r.num_;
    return r;
}

QScalar QScalar::inverse() const {
    if (is_zero()) throw qpb_error("QScalar inverse of zero");
    return QScalar(den_, num_);
}

QScalar QScalar::pow(int e) const {
    if (e == 0) return one();
    QScalar base = e > 0 ? *this : inverse();
    int n = e > 0 ? e : -e;
    QScalar acc = one();
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

mpq_class QScalar::eval(const mpq_class& q0) const {
    mpq_class d = den_.eval(q0);
    if (d == 0) throw pole_error("QScalar evaluated at a pole");
    mpq_class r = num_.eval(q0) / d;
    r.canonicalize();
    return r;
}

std::string QScalar::to_string() const {
    std::string n = num_.to_string();
    if (den_.degree() == 0 && den_.coeff(0) == 1) return n;
    bool multi_num = false;
    for (size_t i = 0; i < n.size(); ++i)
        if (i > 0 && (n[i] == '+' || n[i] == '-')) multi_num = true;
    std::string d = den_.to_string();
    bool multi_den = false;
    for (size_t i = 0; i < d.size(); ++i)
        if (i > 0 && (d[i] == '+' || d[i] == '-')) multi_den = true;
    std::string out = multi_num ? "(" + n + ")" : n;
    out += "/";
    out += multi_den ? "(" + d + ")" : d;
    return out;
}

}  // namespace qpb
