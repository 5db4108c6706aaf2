#include "cmzv/ringA.hpp"

#include <stdexcept>

namespace cmzv {

PolyA::PolyA(gf::FieldPtr field, std::vector<gf::Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    normalize();
}

void PolyA::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyA PolyA::constant(gf::FieldPtr field, gf::Elem c) { return PolyA(std::move(field), {c}); }

PolyA PolyA::one(gf::FieldPtr field) {
    gf::Elem o = field->one();
    return constant(std::move(field), o);
}

PolyA PolyA::monomial(gf::FieldPtr field, gf::Elem c, std::size_t k) {
    std::vector<gf::Elem> v(k + 1);
    v[k] = c;
    return PolyA(std::move(field), std::move(v));
}

PolyA PolyA::operator+(const PolyA& o) const {
    const auto& K = *field_;
    std::vector<gf::Elem> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = K.add(coeff(i), o.coeff(i));
    return PolyA(field_, std::move(v));
}

PolyA PolyA::operator-() const {
    PolyA r = *this;
    for (auto& c : r.c_) c = field_->neg(c);
    return r;
}

PolyA PolyA::operator-(const PolyA& o) const { return *this + (-o); }

PolyA PolyA::operator*(const PolyA& o) const {
    if (is_zero() || o.is_zero()) return PolyA(field_);
    const auto& K = *field_;
    std::vector<gf::Elem> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = K.add(v[i + j], K.mul(c_[i], o.c_[j]));
    }
    return PolyA(field_, std::move(v));
}

PolyA PolyA::scaled(gf::Elem c) const {
    PolyA r = *this;
    for (auto& x : r.c_) x = field_->mul(x, c);
    r.normalize();
    return r;
}

PolyA PolyA::pow(std::uint64_t k) const {
    PolyA r = one(field_), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

PolyA PolyA::monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(lead()));
}

std::pair<PolyA, PolyA> PolyA::divmod(const PolyA& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& K = *field_;
    std::vector<gf::Elem> rem = c_;
    const std::size_t dn = d.c_.size();
    if (rem.size() < dn) return {PolyA(field_), *this};
    std::vector<gf::Elem> quo(rem.size() - dn + 1);
    const gf::Elem linv = K.inv(d.lead());
    for (std::size_t k = rem.size(); k-- >= dn;) {
        gf::Elem c = K.mul(rem[k], linv);
        quo[k - dn + 1] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < dn; ++j) rem[k - dn + 1 + j] = K.sub(rem[k - dn + 1 + j], K.mul(c, d.c_[j]));
    }
    rem.resize(dn - 1);
    return {PolyA(field_, std::move(quo)), PolyA(field_, std::move(rem))};
}

gf::Elem PolyA::eval(gf::Elem x) const {
    const auto& K = *field_;
    gf::Elem acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = K.add(K.mul(acc, x), c_[i]);
    return acc;
}

PolyA PolyA::frobenius_coeffs(std::int64_t k) const {
    PolyA r = *this;
    for (auto& c : r.c_) c = field_->frobenius(c, k);
    return r;
}

PolyA PolyA::qpow(std::uint64_t q, std::uint32_t n) const {
    std::uint64_t qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) qn *= q;
    auto pp = gf::factor_prime_power(q);
    std::vector<gf::Elem> v(c_.empty() ? 0 : (c_.size() - 1) * qn + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * qn] = field_->qpow_twist(c_[i], pp.m, n);
    return PolyA(field_, std::move(v));
}

PolyA poly_gcd(PolyA a, PolyA b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RatFuncExt::RatFuncExt(const PolyA& num) : num_(num), den_(PolyA::one(num.field())) {}

RatFuncExt::RatFuncExt(PolyA num, PolyA den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = num;
        den_ = PolyA::one(den.field());
        return;
    }
    PolyA g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = num.divmod(g).first;
        den = den.divmod(g).first;
    }
    gf::Elem l = den.lead();
    gf::Elem linv = den.field()->inv(l);
    num_ = num.scaled(linv);
    den_ = den.scaled(linv);
}

std::int64_t RatFuncExt::degree() const {
    if (is_zero()) throw std::domain_error("degree of zero");
    return num_.degree() - den_.degree();
}

RatFuncExt RatFuncExt::operator+(const RatFuncExt& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFuncExt(num_ + o.num_, den_);
    PolyA g = poly_gcd(den_, o.den_);
    PolyA a = o.den_.divmod(g).first;  // cofactor for this
    PolyA b = den_.divmod(g).first;
    return RatFuncExt(num_ * a + o.num_ * b, den_ * a);
}

RatFuncExt RatFuncExt::operator-() const {
    RatFuncExt r = *this;
    r.num_ = -num_;
    return r;
}

RatFuncExt RatFuncExt::operator-(const RatFuncExt& o) const { return *this + (-o); }

RatFuncExt RatFuncExt::operator*(const RatFuncExt& o) const {
    if (is_zero() || o.is_zero()) return zero(field());
    PolyA g1 = poly_gcd(num_, o.den_), g2 = poly_gcd(o.num_, den_);
    return RatFuncExt(num_.divmod(g1).first * o.num_.divmod(g2).first,
                      den_.divmod(g2).first * o.den_.divmod(g1).first);
}

RatFuncExt RatFuncExt::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatFuncExt(den_, num_);
}

RatFuncExt RatFuncExt::operator/(const RatFuncExt& o) const { return *this * o.inv(); }

RatFuncExt RatFuncExt::scaled(gf::Elem c) const {
    if (c.is_zero()) return zero(field());
    RatFuncExt r = *this;
    r.num_ = num_.scaled(c);
    return r;
}

RatFuncExt RatFuncExt::pow(std::uint64_t k) const {
    RatFuncExt r;
    r.num_ = num_.pow(k);
    r.den_ = den_.pow(k);
    return r;
}

void for_each_monic(const Setting& st, std::uint32_t d, const std::function<void(const PolyA&)>& fn) {
    const std::uint64_t q = st.q;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        total *= q;
        if (total > (1ull << 22)) throw std::length_error("monic enumeration exceeds 2^22 polynomials");
    }
    std::vector<gf::Elem> c(d + 1);
    c[d] = st.K->one();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        // idx in base q with the digit of c_0 least significant.
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < d; ++i) {
            c[i] = st.fq_elems[v % q];
            v /= q;
        }
        fn(PolyA(st.K, c));
    }
}

std::vector<PolyA> monics(const Setting& st, std::uint32_t d) {
    std::vector<PolyA> out;
    for_each_monic(st, d, [&](const PolyA& a) { out.push_back(a); });
    return out;
}

PolyA carlitz_D(const Setting& st, std::uint32_t i) {
    const auto& F = st.K;
    PolyA th = PolyA::theta(F);
    PolyA acc = PolyA::one(F);
    PolyA tqi = th.qpow(st.q, i);
    for (std::uint32_t j = 0; j < i; ++j) acc *= tqi - th.qpow(st.q, j);
    return acc;
}

PolyA gamma(const Setting& st, std::uint64_t n) {
    PolyA acc = PolyA::one(st.K);
    for (std::uint32_t i = 0; n > 0; ++i, n /= st.q) {
        std::uint64_t digit = n % st.q;
        if (digit && i > 0) acc *= carlitz_D(st, i).pow(digit);
    }
    return acc;
}

LaurentScalar to_laurent(const PolyA& f, const SpecPtr& spec) {
    const auto& K = spec->F();
    const std::int64_t D = spec->theta_step();
    std::vector<LaurentScalar::Term> t;
    const gf::Elem minus1 = K.neg(K.one());
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        gf::Elem c = f.coeffs()[i];
        if (c.is_zero()) continue;
        t.emplace_back(-static_cast<std::int64_t>(i) * D, (i % 2) ? K.mul(c, minus1) : c);
    }
    return LaurentScalar::from_terms(spec, std::move(t), kExact);
}

LaurentScalar to_laurent(const RatFuncExt& f, const SpecPtr& spec, std::int64_t prec) {
    if (f.is_zero()) return LaurentScalar::zero(spec, prec);
    LaurentScalar n = to_laurent(f.num(), spec);
    if (f.den().degree() == 0) return n.scaled(spec->F().inv(f.den().lead())).truncated(prec);
    const std::int64_t D = spec->theta_step();
    LaurentScalar dinv = laurent_inv(to_laurent(f.den(), spec), prec + f.num().degree() * D);
    return (n * dinv).truncated(prec);
}

}  // namespace cmzv
