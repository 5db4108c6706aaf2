#include "cmzv/gf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <tuple>

namespace cmzv::gf {

namespace {

using Coeffs = std::vector<std::uint32_t>;

void trim(Coeffs& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    return static_cast<std::uint32_t>(powmod_u64(a, p - 2, p));
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    const std::size_t n = f.size() - 1;
    const std::uint64_t lead_inv = inv_mod_p(f.back(), p);
    for (std::size_t k = prod.size(); k-- > n;) {
        std::uint64_t c = prod[k] * lead_inv % p;
        if (!c) continue;
        for (std::size_t j = 0; j <= n; ++j)
            prod[k - n + j] = (prod[k - n + j] + (p - c) * f[j]) % p;
    }
    Coeffs out(std::min(prod.size(), n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    trim(out);
    return out;
}

Coeffs poly_mod(Coeffs a, const Coeffs& f, std::uint32_t p) {
    trim(a);
    const std::size_t n = f.size() - 1;
    const std::uint64_t lead_inv = inv_mod_p(f.back(), p);
    while (a.size() > n) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - n;
        for (std::size_t j = 0; j <= n; ++j)
            a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * f[j]) % p);
        trim(a);
    }
    return a;
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Arithmetic on packed base-p integers, used only while building tables.
struct PackedOps {
    const FieldSpec& spec;

    Coeffs unpack(std::uint32_t v) const {
        Coeffs c(spec.e, 0);
        for (std::uint32_t i = 0; i < spec.e; ++i) {
            c[i] = v % spec.p;
            v /= spec.p;
        }
        trim(c);
        return c;
    }
    std::uint32_t pack(const Coeffs& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * spec.p + c[i];
        return static_cast<std::uint32_t>(v);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (spec.e == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % spec.p);
        return pack(poly_mulmod(unpack(a), unpack(b), spec.modulus, spec.p));
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < spec.e; ++i) {
            out += ((a % spec.p + b % spec.p) % spec.p) * scale;
            a /= spec.p;
            b /= spec.p;
            scale *= spec.p;
        }
        return static_cast<std::uint32_t>(out);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
        std::uint32_t r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }
};

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::uint64_t FieldSpec::order() const { return ipow(p, e); }

std::uint64_t max_field_size() {
    if (const char* env = std::getenv("CMZV_MAX_FIELD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return std::uint64_t{1} << 20;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimePower factor_prime_power(std::uint64_t q) {
    if (q < 2) throw FieldError("not a prime power: " + std::to_string(q));
    auto fs = prime_factors(q);
    if (fs.size() != 1) throw FieldError("not a prime power: " + std::to_string(q));
    std::uint32_t m = 0;
    while (q > 1) {
        q /= fs[0];
        ++m;
    }
    return {static_cast<std::uint32_t>(fs[0]), m};
}

bool is_irreducible(const std::vector<std::uint32_t>& f_in, std::uint32_t p) {
    Coeffs f = f_in;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    // x^{p^k} mod f for k = 1 .. n/2; any nontrivial gcd with x^{p^k} - x
    // exposes a factor of degree dividing k.
    Coeffs xpk = {0, 1};
    for (std::size_t k = 1; k <= n / 2; ++k) {
        Coeffs acc = {1};
        Coeffs base = xpk;
        std::uint32_t e = p;
        while (e) {
            if (e & 1) acc = poly_mulmod(acc, base, f, p);
            base = poly_mulmod(base, base, f, p);
            e >>= 1;
        }
        xpk = acc;
        Coeffs diff = xpk;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        Coeffs g = poly_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

FieldSpec build_field(std::uint32_t p, std::uint32_t e) {
    if (!is_prime(p)) throw FieldError("characteristic is not prime: " + std::to_string(p));
    if (e == 0) throw FieldError("extension degree must be positive");
    FieldSpec spec{p, e, {}};
    if (spec.order() > max_field_size() || spec.order() > (std::uint64_t{1} << 31))
        throw FieldError("field F_" + std::to_string(p) + "^" + std::to_string(e) + " exceeds size guard");
    if (e == 1) {
        spec.modulus = {0, 1};
        return spec;
    }
    const std::uint64_t count = ipow(p, e);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        // idx read with c_{e-1} most significant: lexicographic from the top.
        Coeffs f(e + 1, 0);
        f[e] = 1;
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < e; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (f[0] == 0) continue;
        if (is_irreducible(f, p)) {
            spec.modulus = f;
            return spec;
        }
    }
    throw FieldError("no irreducible polynomial found");
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
    size_ = spec_.order();
    if (size_ > max_field_size() || size_ > (std::uint64_t{1} << 31))
        throw FieldError("field exceeds size guard");
    n_ = static_cast<std::uint32_t>(size_ - 1);
    PackedOps ops{spec_};

    std::uint32_t gen = 1;
    if (n_ > 1) {
        auto primes = prime_factors(n_);
        for (std::uint32_t v = 2; v < size_; ++v) {
            bool ok = ops.pow(v, n_) == 1;
            for (auto l : primes) {
                if (!ok) break;
                ok = ops.pow(v, n_ / l) != 1;
            }
            if (ok) {
                gen = v;
                break;
            }
        }
    }
    exp_.assign(n_, 0);
    log_.assign(size_, Elem::kZero);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        exp_[i] = cur;
        if (log_[cur] != Elem::kZero) throw FieldError("generator search failed");
        log_[cur] = i;
        cur = ops.mul(cur, gen);
    }
    zech_.assign(n_, Elem::kZero);
    for (std::uint32_t d = 0; d < n_; ++d) {
        std::uint32_t s = ops.add(1, exp_[d]);
        zech_[d] = s == 0 ? Elem::kZero : log_[s];
    }
}

std::shared_ptr<const GaloisField> GaloisField::make(std::uint32_t p, std::uint32_t e) {
    return std::make_shared<const GaloisField>(build_field(p, e));
}

Elem GaloisField::gen_pow(std::int64_t k) const {
    return Elem::from_log(static_cast<std::uint32_t>(mod_floor(k, n_)));
}

Elem GaloisField::inv(Elem a) const {
    if (a.is_zero()) throw FieldError("inverse of zero");
    return Elem::from_log(a.log() == 0 ? 0 : n_ - a.log());
}

Elem GaloisField::pow(Elem a, std::int64_t k) const {
    if (a.is_zero()) {
        if (k < 0) throw FieldError("negative power of zero");
        return k == 0 ? one() : zero();
    }
    std::int64_t kk = mod_floor(k, n_);
    std::uint64_t l = (std::uint64_t(a.log()) * std::uint64_t(kk)) % n_;
    return Elem::from_log(static_cast<std::uint32_t>(l));
}

Elem GaloisField::frobenius(Elem a, std::int64_t k) const {
    if (a.is_zero()) return a;
    std::int64_t kk = mod_floor(k, spec_.e);
    std::uint64_t mult = powmod_u64(spec_.p, static_cast<std::uint64_t>(kk), n_);
    return Elem::from_log(static_cast<std::uint32_t>(std::uint64_t(a.log()) * mult % n_));
}

Elem GaloisField::qpow_twist(Elem a, std::uint32_t m, std::int64_t n) const {
    return frobenius(a, static_cast<std::int64_t>(m) * n);
}

Elem GaloisField::from_int(std::int64_t c) const {
    return from_packed(static_cast<std::uint32_t>(mod_floor(c, spec_.p)));
}

Elem GaloisField::from_packed(std::uint32_t v) const {
    if (v >= size_) throw FieldError("packed value out of range");
    return v == 0 ? Elem::zero() : Elem::from_log(log_[v]);
}

std::vector<std::uint32_t> GaloisField::coeffs(Elem a) const {
    std::vector<std::uint32_t> c(spec_.e, 0);
    std::uint32_t v = packed(a);
    for (std::uint32_t i = 0; i < spec_.e; ++i) {
        c[i] = v % spec_.p;
        v /= spec_.p;
    }
    return c;
}

Elem GaloisField::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > spec_.e) throw FieldError("coefficient vector longer than field degree");
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= spec_.p) throw FieldError("coefficient out of range");
        v = v * spec_.p + c[i];
    }
    return from_packed(static_cast<std::uint32_t>(v));
}

std::uint64_t GaloisField::order_of(Elem a) const {
    if (a.is_zero()) throw FieldError("order of zero");
    return n_ / std::gcd<std::uint64_t, std::uint64_t>(a.log(), n_);
}

bool GaloisField::in_subfield(Elem a, std::uint32_t d) const {
    if (d == 0 || spec_.e % d != 0) return false;
    return frobenius(a, d) == a;
}

GFElem canonical_generator(const FieldSpec& spec) {
    auto f = std::make_shared<const GaloisField>(spec);
    return {f, f->generator()};
}

GFElem qtwist(const GFElem& x, std::uint64_t q, std::int64_t n) {
    auto pp = factor_prime_power(q);
    if (pp.p != x.field->p()) throw FieldError("twist exponent is not a power of the characteristic");
    return {x.field, x.field->qpow_twist(x.value, pp.m, n)};
}

Embedding::Embedding(FieldPtr source, FieldPtr target) : source_(std::move(source)), target_(std::move(target)) {
    const auto& s = *source_;
    const auto& t = *target_;
    if (s.p() != t.p() || t.degree() % s.degree() != 0)
        throw FieldError("no embedding between fields of these sizes");
    Elem gen_image;
    if (s.degree() == 1) {
        image_x_ = t.zero();
        gen_image = t.from_int(s.packed(s.generator()));
    } else {
        const auto& mod = s.spec().modulus;
        const std::uint32_t step = t.group_order() / s.group_order();
        bool found = false;
        std::uint32_t best_packed = 0;
        for (std::uint32_t j = 0; j < s.group_order(); ++j) {
            Elem y = Elem::from_log(j * step);
            Elem acc = t.zero();
            for (std::size_t k = mod.size(); k-- > 0;) acc = t.add(t.mul(acc, y), t.from_int(mod[k]));
            if (acc.is_zero() && (!found || t.packed(y) < best_packed)) {
                found = true;
                best_packed = t.packed(y);
                image_x_ = y;
            }
        }
        if (!found) throw FieldError("source modulus has no root in target");
        auto gc = s.coeffs(s.generator());
        gen_image = t.zero();
        for (std::size_t k = gc.size(); k-- > 0;) gen_image = t.add(t.mul(gen_image, image_x_), t.from_int(gc[k]));
    }
    log_scale_ = gen_image.log();
}

Elem Embedding::apply(Elem x) const {
    if (x.is_zero()) return x;
    std::uint64_t l = std::uint64_t(x.log()) * log_scale_ % target_->group_order();
    return Elem::from_log(static_cast<std::uint32_t>(l));
}

GFElem Embedding::operator()(const GFElem& x) const {
    if (!(x.field->spec() == source_->spec())) throw FieldError("embedding applied to element of another field");
    return {target_, apply(x.value)};
}

GFElem embed(const GFElem& x, const Embedding& emb) { return emb(x); }

Elem solve_mu_in(const GaloisField& field, Elem xi, std::uint64_t q, std::uint32_t r) {
    if (xi.is_zero()) throw FieldError("colors must be nonzero");
    const std::uint64_t n = field.group_order();
    const std::uint64_t qr1 = ipow(q, r) - 1;
    const std::uint64_t c = (std::uint64_t(xi.log()) * r) % n;  // log of xi^r
    const std::uint64_t g = std::gcd(qr1, n);
    if (c % g != 0) throw FieldError("no root of the mu equation in this field");
    // l * qr1 == c (mod n): solve in Z/(n/g), least representative.
    const std::uint64_t ng = n / g;
    if (ng == 1) return Elem::from_log(0);
    const std::uint64_t a = (qr1 / g) % ng;
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(ng), r1 = static_cast<std::int64_t>(a);
    while (r1) {
        std::int64_t qt = r0 / r1;
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    }
    const std::uint64_t ainv = static_cast<std::uint64_t>(mod_floor(t0, static_cast<std::int64_t>(ng)));
    const std::uint64_t l = static_cast<std::uint64_t>((unsigned __int128)((c / g) % ng) * ainv % ng);
    return Elem::from_log(static_cast<std::uint32_t>(l));
}

MuSolution solve_mu(const GFElem& xi, std::uint64_t q, std::uint32_t r) {
    auto pp = factor_prime_power(q);
    const auto& cf = *xi.field;
    if (cf.p() != pp.p || cf.degree() != pp.m * r) throw FieldError("color must be given in F_{q^r}");
    if (xi.value.is_zero()) throw FieldError("colors must be nonzero");
    for (std::uint32_t ext = 1;; ++ext) {
        const std::uint64_t e = std::uint64_t(pp.m) * r * ext;
        if (ipow(pp.p, static_cast<std::uint32_t>(std::min<std::uint64_t>(e, 64))) > max_field_size() || e > 40)
            throw FieldError("mu search exceeded the field size guard");
        auto home = GaloisField::make(pp.p, static_cast<std::uint32_t>(e));
        Embedding emb(xi.field, home);
        Elem x = emb.apply(xi.value);
        const std::uint64_t n = home->group_order();
        const std::uint64_t qr1 = ipow(q, r) - 1;
        const std::uint64_t g = std::gcd(qr1, n);
        if ((std::uint64_t(x.log()) * r % n) % g != 0) continue;
        Elem mu = solve_mu_in(*home, x, q, r);
        return {{home, mu}, home->spec(), ext};
    }
}

}  // namespace cmzv::gf
