#pragma once
// Finite fields F_{p^e} with Zech-logarithm arithmetic, deterministic moduli,
// embeddings between fields of the same characteristic, and the root
// extraction used for the mu constants of the level-r motives.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmzv::gf {

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense description of F_{p^e}: modulus is monic of degree e, ascending
/// coefficients (modulus.size() == e + 1).
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t e = 1;
    std::vector<std::uint32_t> modulus;

    std::uint64_t order() const;
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Upper bound on field sizes; CMZV_MAX_FIELD overrides the 2^20 default.
std::uint64_t max_field_size();

bool is_prime(std::uint64_t n);

/// Writes q = p^m; throws if q is not a prime power.
struct PrimePower {
    std::uint32_t p;
    std::uint32_t m;
};
PrimePower factor_prime_power(std::uint64_t q);

/// Irreducibility over F_p by the gcd(f, x^{p^k} - x) test.
bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p);

/// Least monic irreducible of degree e (coefficients compared from x^{e-1}
/// down to x^0). Degree one uses the modulus x.
FieldSpec build_field(std::uint32_t p, std::uint32_t e);

/// Field element in Zech-log form: value() is the discrete log with respect to
/// the canonical generator, or kZero.
class Elem {
public:
    static constexpr std::uint32_t kZero = 0xffffffffu;

    constexpr Elem() = default;
    static constexpr Elem from_log(std::uint32_t l) { return Elem(l); }
    static constexpr Elem zero() { return Elem(); }

    constexpr bool is_zero() const { return log_ == kZero; }
    constexpr std::uint32_t log() const { return log_; }

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem a, Elem b) { return a.log_ <=> b.log_; }

private:
    constexpr explicit Elem(std::uint32_t l) : log_(l) {}
    std::uint32_t log_ = kZero;
};

class GaloisField {
public:
    explicit GaloisField(FieldSpec spec);

    static std::shared_ptr<const GaloisField> make(std::uint32_t p, std::uint32_t e);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t degree() const { return spec_.e; }
    std::uint64_t size() const { return size_; }
    std::uint32_t group_order() const { return n_; }

    Elem zero() const { return Elem::zero(); }
    Elem one() const { return Elem::from_log(0); }
    Elem generator() const { return Elem::from_log(n_ == 1 ? 0 : 1); }
    Elem gen_pow(std::int64_t k) const;

    Elem add(Elem a, Elem b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::uint32_t d = b.log() >= a.log() ? b.log() - a.log() : b.log() + n_ - a.log();
        std::uint32_t z = zech_[d];
        if (z == Elem::kZero) return Elem::zero();
        std::uint32_t s = a.log() + z;
        return Elem::from_log(s >= n_ ? s - n_ : s);
    }
    Elem neg(Elem a) const {
        if (a.is_zero() || spec_.p == 2) return a;
        std::uint32_t s = a.log() + n_ / 2;
        return Elem::from_log(s >= n_ ? s - n_ : s);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a.is_zero() || b.is_zero()) return Elem::zero();
        std::uint32_t s = a.log() + b.log();
        return Elem::from_log(s >= n_ ? s - n_ : s);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::int64_t k) const;

    /// x^{p^k} for any integer k (negative k is inverse Frobenius).
    Elem frobenius(Elem a, std::int64_t k) const;
    /// x^{q^n} with q = p^m.
    Elem qpow_twist(Elem a, std::uint32_t m, std::int64_t n) const;

    Elem from_int(std::int64_t c) const;
    /// Packed base-p value sum c_i p^i of the coefficient vector.
    std::uint32_t packed(Elem a) const { return a.is_zero() ? 0 : exp_[a.log()]; }
    Elem from_packed(std::uint32_t v) const;
    std::vector<std::uint32_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint32_t>& c) const;

    /// Multiplicative order of a nonzero element.
    std::uint64_t order_of(Elem a) const;
    /// True when a lies in the subfield with p^d elements.
    bool in_subfield(Elem a, std::uint32_t d) const;

private:
    FieldSpec spec_;
    std::uint64_t size_;
    std::uint32_t n_;  // size - 1
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Element bundled with its field, for APIs and tests.
struct GFElem {
    FieldPtr field;
    Elem value;

    friend bool operator==(const GFElem& a, const GFElem& b) {
        return a.field->spec() == b.field->spec() && a.value == b.value;
    }
    GFElem operator+(const GFElem& o) const { return {field, field->add(value, o.value)}; }
    GFElem operator*(const GFElem& o) const { return {field, field->mul(value, o.value)}; }
    GFElem pow(std::int64_t k) const { return {field, field->pow(value, k)}; }
};

/// Least element (packed order) whose multiplicative order is p^e - 1.
GFElem canonical_generator(const FieldSpec& spec);

/// x^{q^n}; q must be a power of the characteristic.
GFElem qtwist(const GFElem& x, std::uint64_t q, std::int64_t n);

/// Ring embedding F_{p^a} -> F_{p^b}, a | b, sending the polynomial
/// generator to the least root of the source modulus in the target.
class Embedding {
public:
    Embedding(FieldPtr source, FieldPtr target);

    const FieldPtr& source() const { return source_; }
    const FieldPtr& target() const { return target_; }
    /// Image of the polynomial generator x of the source.
    Elem image_of_generator() const { return image_x_; }

    Elem apply(Elem x) const;
    GFElem operator()(const GFElem& x) const;

private:
    FieldPtr source_;
    FieldPtr target_;
    Elem image_x_;
    std::uint32_t log_scale_;
};

GFElem embed(const GFElem& x, const Embedding& emb);

struct MuSolution {
    GFElem mu;
    FieldSpec home;
    std::uint32_t ext_degree;  // home = F_{q^{r * ext_degree}}
};

/// Smallest F_{q^{rm}} containing mu with mu^{q^r - 1} = xi^r; among the roots
/// there, the one with least discrete log. xi must lie in F_{q^r}^x and be
/// given as an element of the field F_{q^r} built by build_field.
MuSolution solve_mu(const GFElem& xi, std::uint64_t q, std::uint32_t r);

/// Same equation, solved inside a given field that already contains a root.
Elem solve_mu_in(const GaloisField& field, Elem xi, std::uint64_t q, std::uint32_t r);

}  // namespace cmzv::gf
