#pragma once
// A = F_q[theta] with coefficients in a finite field K ⊇ F_q, its fraction
// field, monic enumeration, Carlitz gamma values and the embedding into the
// Laurent model of k_infinity.

#include <functional>
#include <vector>

#include "cmzv/gf.hpp"
#include "cmzv/scalars.hpp"
#include "cmzv/setting.hpp"

namespace cmzv {

class PolyA {
public:
    PolyA() = default;
    explicit PolyA(gf::FieldPtr field, std::vector<gf::Elem> coeffs = {});

    static PolyA zero(gf::FieldPtr field) { return PolyA(std::move(field)); }
    static PolyA constant(gf::FieldPtr field, gf::Elem c);
    static PolyA one(gf::FieldPtr field);
    /// c * theta^k.
    static PolyA monomial(gf::FieldPtr field, gf::Elem c, std::size_t k);
    static PolyA theta(gf::FieldPtr field) { return monomial(field, field->one(), 1); }

    const gf::FieldPtr& field() const { return field_; }
    const std::vector<gf::Elem>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }
    gf::Elem lead() const { return c_.empty() ? gf::Elem::zero() : c_.back(); }
    gf::Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : gf::Elem::zero(); }

    PolyA operator+(const PolyA& o) const;
    PolyA operator-(const PolyA& o) const;
    PolyA operator-() const;
    PolyA operator*(const PolyA& o) const;
    PolyA& operator+=(const PolyA& o) { return *this = *this + o; }
    PolyA& operator*=(const PolyA& o) { return *this = *this * o; }
    PolyA scaled(gf::Elem c) const;
    PolyA pow(std::uint64_t k) const;
    PolyA monic() const;

    /// Quotient and remainder; the divisor must be nonzero.
    std::pair<PolyA, PolyA> divmod(const PolyA& d) const;
    gf::Elem eval(gf::Elem x) const;
    /// Coefficientwise x -> x^{p^k}; theta is untouched.
    PolyA frobenius_coeffs(std::int64_t k) const;
    /// f(theta^{q^n}) with coefficients raised to q^n: the q^n-power map.
    PolyA qpow(std::uint64_t q, std::uint32_t n) const;

    friend bool operator==(const PolyA& a, const PolyA& b) { return a.c_ == b.c_; }

private:
    void normalize();
    gf::FieldPtr field_;
    std::vector<gf::Elem> c_;
};

PolyA poly_gcd(PolyA a, PolyA b);

/// Reduced fraction with monic denominator.
class RatFuncExt {
public:
    RatFuncExt() = default;
    RatFuncExt(PolyA num, PolyA den);
    explicit RatFuncExt(const PolyA& num);

    static RatFuncExt zero(gf::FieldPtr field) { return RatFuncExt(PolyA::zero(field)); }
    static RatFuncExt one(gf::FieldPtr field) { return RatFuncExt(PolyA::one(field)); }

    const PolyA& num() const { return num_; }
    const PolyA& den() const { return den_; }
    const gf::FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    /// deg num - deg den; throws for zero.
    std::int64_t degree() const;

    RatFuncExt operator+(const RatFuncExt& o) const;
    RatFuncExt operator-(const RatFuncExt& o) const;
    RatFuncExt operator-() const;
    RatFuncExt operator*(const RatFuncExt& o) const;
    RatFuncExt operator/(const RatFuncExt& o) const;
    RatFuncExt& operator+=(const RatFuncExt& o) { return *this = *this + o; }
    RatFuncExt& operator*=(const RatFuncExt& o) { return *this = *this * o; }
    RatFuncExt scaled(gf::Elem c) const;
    RatFuncExt inv() const;
    RatFuncExt pow(std::uint64_t k) const;

    friend bool operator==(const RatFuncExt& a, const RatFuncExt& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    PolyA num_;
    PolyA den_;
};

/// Monic polynomials of degree d over F_q (inside K), lexicographic in
/// (c_{d-1}, ..., c_0) with F_q ordered by packed value.
std::vector<PolyA> monics(const Setting& st, std::uint32_t d);
/// Streams the monics without materializing them.
void for_each_monic(const Setting& st, std::uint32_t d, const std::function<void(const PolyA&)>& fn);

/// Gamma_{n+1} = prod_i D_i^{n_i} over the base-q digits of n.
PolyA gamma(const Setting& st, std::uint64_t n);
/// D_i = prod_{j<i} (theta^{q^i} - theta^{q^j}).
PolyA carlitz_D(const Setting& st, std::uint32_t i);

/// Exact expansion of a polynomial in the uniformizer.
LaurentScalar to_laurent(const PolyA& f, const SpecPtr& spec);
/// Expansion of a fraction, exact through v-exponent prec.
LaurentScalar to_laurent(const RatFuncExt& f, const SpecPtr& spec, std::int64_t prec);

}  // namespace cmzv
