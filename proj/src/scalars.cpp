#include "cmzv/scalars.hpp"

#include <algorithm>
#include <numeric>

namespace cmzv {

namespace {

std::int64_t ipow64(std::int64_t b, std::uint32_t e) {
    std::int64_t r = 1;
    while (e--) {
        if (r > kExact / b) throw PrecisionError("exponent overflow in uniformizer tower");
        r *= b;
    }
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Merge two sorted term lists with coefficient map f applied to b.
template <class F>
std::vector<LaurentScalar::Term> merge_terms(const gf::GaloisField& K, const std::vector<LaurentScalar::Term>& a,
                                             const std::vector<LaurentScalar::Term>& b, std::int64_t prec, F fb) {
    std::vector<LaurentScalar::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        std::int64_t ea = i < a.size() ? a[i].first : kExact + 1;
        std::int64_t eb = j < b.size() ? b[j].first : kExact + 1;
        std::int64_t e = std::min(ea, eb);
        if (e > prec) break;
        gf::Elem c;
        if (ea == eb) {
            c = K.add(a[i].second, fb(b[j].second));
            ++i, ++j;
        } else if (ea < eb) {
            c = a[i++].second;
        } else {
            c = fb(b[j++].second);
        }
        if (!c.is_zero()) out.emplace_back(e, c);
    }
    return out;
}

}  // namespace

std::int64_t UniformizerSpec::theta_step() const { return static_cast<std::int64_t>(q - 1) * q_pow(r); }

std::int64_t UniformizerSpec::q_pow(std::uint32_t k) const { return ipow64(static_cast<std::int64_t>(q), k); }

SpecPtr make_uniformizer(std::uint64_t q, std::uint32_t r, gf::FieldPtr field) {
    auto pp = gf::factor_prime_power(q);
    if (!field || field->p() != pp.p || field->degree() % pp.m != 0)
        throw gf::FieldError("coefficient field must contain F_q");
    auto s = std::make_shared<UniformizerSpec>();
    s->q = q;
    s->m = pp.m;
    s->r = r;
    s->field = std::move(field);
    return s;
}

LaurentScalar LaurentScalar::constant(SpecPtr spec, gf::Elem c) { return monomial(std::move(spec), c, 0); }

LaurentScalar LaurentScalar::one(SpecPtr spec) {
    gf::Elem c = spec->F().one();
    return constant(std::move(spec), c);
}

LaurentScalar LaurentScalar::monomial(SpecPtr spec, gf::Elem c, std::int64_t exponent) {
    LaurentScalar x(std::move(spec));
    if (!c.is_zero()) x.terms_.emplace_back(exponent, c);
    return x;
}

LaurentScalar LaurentScalar::theta(SpecPtr spec) {
    const auto& K = spec->F();
    std::int64_t e = -spec->theta_step();
    return monomial(std::move(spec), K.neg(K.one()), e);
}

LaurentScalar LaurentScalar::from_terms(SpecPtr spec, std::vector<Term> terms, std::int64_t prec) {
    const auto& K = spec->F();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentScalar x(std::move(spec), prec);
    for (const auto& [e, c] : terms) {
        if (e > prec) break;
        if (!x.terms_.empty() && x.terms_.back().first == e) {
            x.terms_.back().second = K.add(x.terms_.back().second, c);
            if (x.terms_.back().second.is_zero()) x.terms_.pop_back();
        } else if (!c.is_zero()) {
            x.terms_.emplace_back(e, c);
        }
    }
    return x;
}

std::int64_t LaurentScalar::valuation() const {
    if (terms_.empty()) throw PrecisionError("value is zero to the available precision");
    return terms_.front().first;
}

std::int64_t LaurentScalar::valuation_bound() const {
    if (!terms_.empty()) return terms_.front().first;
    return sat_add(prec_, 1);
}

gf::Elem LaurentScalar::leading_coefficient() const {
    if (terms_.empty()) throw PrecisionError("value is zero to the available precision");
    return terms_.front().second;
}

gf::Elem LaurentScalar::coefficient(std::int64_t exponent) const {
    if (exponent > prec_) throw PrecisionError("coefficient beyond precision");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, std::int64_t e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return gf::Elem::zero();
}

LaurentScalar LaurentScalar::truncated(std::int64_t prec) const {
    LaurentScalar x(spec_, std::min(prec, prec_));
    for (const auto& t : terms_) {
        if (t.first > x.prec_) break;
        x.terms_.push_back(t);
    }
    return x;
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar x = *this;
    const auto& K = spec_->F();
    for (auto& t : x.terms_) t.second = K.neg(t.second);
    return x;
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
    const auto& K = spec_->F();
    std::int64_t prec = std::min(prec_, o.prec_);
    LaurentScalar x(spec_, prec);
    x.terms_ = merge_terms(K, terms_, o.terms_, prec, [](gf::Elem c) { return c; });
    return x;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const {
    const auto& K = spec_->F();
    std::int64_t prec = std::min(prec_, o.prec_);
    LaurentScalar x(spec_, prec);
    x.terms_ = merge_terms(K, terms_, o.terms_, prec, [&K](gf::Elem c) { return K.neg(c); });
    return x;
}

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
    const auto& K = spec_->F();
    std::int64_t va = valuation_bound(), vb = o.valuation_bound();
    std::int64_t prec = std::min(sat_add(prec_, vb), sat_add(o.prec_, va));
    LaurentScalar x(spec_, prec);
    if (terms_.empty() || o.terms_.empty()) return x;
    if (terms_.size() == 1 || o.terms_.size() == 1) {
        const auto& mono = terms_.size() == 1 ? terms_ : o.terms_;
        const auto& other = terms_.size() == 1 ? o.terms_ : terms_;
        for (const auto& [e, c] : other) {
            std::int64_t ee = e + mono[0].first;
            if (ee > prec) break;
            x.terms_.emplace_back(ee, K.mul(c, mono[0].second));
        }
        return x;
    }
    // Dense accumulation on the common exponent lattice.
    std::int64_t g = 0;
    for (const auto& t : terms_) g = std::gcd(g, t.first - va);
    for (const auto& t : o.terms_) g = std::gcd(g, t.first - vb);
    if (g == 0) g = 1;
    std::int64_t base = va + vb;
    std::int64_t top = std::min<std::int64_t>(prec, terms_.back().first + o.terms_.back().first);
    if (top < base) return x;
    std::vector<gf::Elem> acc(static_cast<std::size_t>((top - base) / g + 1));
    for (const auto& [ea, ca] : terms_) {
        if (ea + vb > top) break;
        std::size_t off = static_cast<std::size_t>((ea - va) / g);
        for (const auto& [eb, cb] : o.terms_) {
            if (ea + eb > top) break;
            std::size_t k = off + static_cast<std::size_t>((eb - vb) / g);
            acc[k] = K.add(acc[k], K.mul(ca, cb));
        }
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (!acc[k].is_zero()) x.terms_.emplace_back(base + static_cast<std::int64_t>(k) * g, acc[k]);
    return x;
}

LaurentScalar LaurentScalar::scaled(gf::Elem c) const {
    const auto& K = spec_->F();
    if (c.is_zero()) {
        LaurentScalar z(spec_, kExact);
        return z;
    }
    LaurentScalar x = *this;
    for (auto& t : x.terms_) t.second = K.mul(t.second, c);
    return x;
}

LaurentScalar LaurentScalar::shifted(std::int64_t k) const {
    LaurentScalar x = *this;
    for (auto& t : x.terms_) t.first += k;
    x.prec_ = sat_add(prec_, k);
    return x;
}

LaurentScalar LaurentScalar::pow(std::uint64_t k) const {
    LaurentScalar result = one(spec_);
    LaurentScalar b = *this;
    while (k) {
        if (k & 1) result = result * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return result;
}

std::optional<std::int64_t> LaurentScalar::first_difference(const LaurentScalar& o) const {
    std::int64_t prec = std::min(prec_, o.prec_);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        std::int64_t ea = i < terms_.size() ? terms_[i].first : kExact + 1;
        std::int64_t eb = j < o.terms_.size() ? o.terms_[j].first : kExact + 1;
        std::int64_t e = std::min(ea, eb);
        if (e > prec) return std::nullopt;
        if (ea != eb) return e;
        if (terms_[i].second != o.terms_[j].second) return e;
        ++i, ++j;
    }
    return std::nullopt;
}

bool LaurentScalar::agrees_with(const LaurentScalar& o) const { return !first_difference(o).has_value(); }

LaurentScalar theta_root(const SpecPtr& spec, std::uint32_t i) {
    if (i > spec->r) throw std::out_of_range("theta_root: depth exceeds the uniformizer tower");
    const auto& K = spec->F();
    std::int64_t e = -static_cast<std::int64_t>(spec->q - 1) * spec->q_pow(spec->r - i);
    return LaurentScalar::monomial(spec, K.neg(K.one()), e);
}

LaurentScalar laurent_inv(const LaurentScalar& x, std::int64_t target_prec) {
    const auto& spec = x.spec();
    const auto& K = spec->F();
    if (x.is_zero()) throw PrecisionError("cannot invert a value that is zero to precision");
    const std::int64_t k = x.valuation();
    const gf::Elem c0inv = K.inv(x.leading_coefficient());
    std::int64_t prec = target_prec;
    if (!x.is_exact()) prec = std::min(prec, x.prec() - 2 * k);
    const auto& ts = x.terms();
    if (ts.size() == 1) {
        LaurentScalar r = LaurentScalar::monomial(spec, c0inv, -k);
        return x.is_exact() && target_prec >= kExact ? r : r.truncated(prec);
    }
    if (prec >= kExact) throw PrecisionError("inverse of a non-monomial needs a finite precision");
    // 1/x = v^{-k} c0^{-1} / (1 + y); iterate on the exponent lattice of y.
    std::int64_t g = 0;
    for (const auto& t : ts) g = std::gcd(g, t.first - k);
    const std::int64_t n_max = prec + k;  // relative exponents 0..n_max
    LaurentScalar out(spec, prec);
    if (n_max < 0) return out;
    const std::size_t len = static_cast<std::size_t>(n_max / g + 1);
    std::vector<std::pair<std::size_t, gf::Elem>> u;  // (index, -u_i / u_0), i >= 1
    for (std::size_t t = 1; t < ts.size(); ++t) {
        std::size_t idx = static_cast<std::size_t>((ts[t].first - k) / g);
        if (idx >= len) break;
        u.emplace_back(idx, K.neg(K.mul(ts[t].second, c0inv)));
    }
    std::vector<gf::Elem> w(len);
    w[0] = c0inv;
    for (std::size_t n = 1; n < len; ++n) {
        gf::Elem s;
        for (const auto& [i, c] : u) {
            if (i > n) break;
            s = K.add(s, K.mul(c, w[n - i]));
        }
        w[n] = s;
    }
    std::vector<LaurentScalar::Term> terms;
    for (std::size_t n = 0; n < len; ++n)
        if (!w[n].is_zero()) terms.emplace_back(-k + static_cast<std::int64_t>(n) * g, w[n]);
    return LaurentScalar::from_terms(spec, std::move(terms), prec);
}

LaurentScalar laurent_qtwist(const LaurentScalar& x, std::int64_t n) {
    const auto& spec = x.spec();
    const auto& K = spec->F();
    std::vector<LaurentScalar::Term> terms;
    terms.reserve(x.terms().size());
    std::int64_t prec;
    if (n >= 0) {
        const std::int64_t qn = spec->q_pow(static_cast<std::uint32_t>(n));
        for (const auto& [e, c] : x.terms()) terms.emplace_back(e * qn, K.qpow_twist(c, spec->m, n));
        prec = x.is_exact() ? kExact : x.prec() * qn;
    } else {
        const std::int64_t qn = spec->q_pow(static_cast<std::uint32_t>(-n));
        for (const auto& [e, c] : x.terms()) {
            if (e % qn != 0) throw TwistError("inverse twist needs exponents divisible by q^n", e);
            terms.emplace_back(e / qn, K.qpow_twist(c, spec->m, n));
        }
        prec = x.is_exact() ? kExact : floor_div(x.prec(), qn);
    }
    return LaurentScalar::from_terms(spec, std::move(terms), prec);
}

LaurentScalar omega_at_theta(const SpecPtr& spec, std::int64_t prec) {
    // Omega(theta) = v^{q^{r+1}} prod_{i>=1} (1 - v^{D (q^i - 1)}), D = (q-1) q^r.
    const auto& K = spec->F();
    const std::int64_t D = spec->theta_step();
    const std::int64_t lead = spec->q_pow(spec->r + 1);
    LaurentScalar acc = LaurentScalar::one(spec).truncated(prec - lead);
    std::int64_t qi = static_cast<std::int64_t>(spec->q);
    while (D * (qi - 1) <= prec - lead) {
        LaurentScalar f = LaurentScalar::one(spec) + LaurentScalar::monomial(spec, K.neg(K.one()), D * (qi - 1));
        acc = acc * f;
        qi *= static_cast<std::int64_t>(spec->q);
    }
    return acc.shifted(lead);
}

LaurentScalar carlitz_period(const SpecPtr& spec, std::int64_t prec) {
    const std::int64_t lead = spec->q_pow(spec->r + 1);
    // Relative precision of Omega(theta) needed: prec + 2 lead in absolute terms.
    LaurentScalar om = omega_at_theta(spec, prec + 2 * lead);
    return laurent_inv(om, prec);
}

std::int64_t theta_degree(const LaurentScalar& x) {
    const std::int64_t D = x.spec()->theta_step();
    const std::int64_t v = x.valuation();
    if (v % D != 0) throw PrecisionError("valuation is not an integral theta-degree");
    return -v / D;
}

}  // namespace cmzv
