#pragma once
// Truncated Laurent series in a uniformizer v with v^{(q-1) q^r} = -1/theta.
// This is the working model of k_infinity together with the fractional powers
// of theta that the r-fold inverse twists need.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmzv/gf.hpp"

namespace cmzv {

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TwistError : public std::runtime_error {
public:
    TwistError(const std::string& what, std::int64_t exponent)
        : std::runtime_error(what), exponent_(exponent) {}
    std::int64_t exponent() const { return exponent_; }

private:
    std::int64_t exponent_;
};

/// Exponent bound meaning "known to every order".
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kExact || b >= kExact) return kExact;
    std::int64_t s = a + b;
    return s >= kExact ? kExact : s;
}

struct UniformizerSpec {
    std::uint64_t q = 2;
    std::uint32_t m = 1;  // q = p^m
    std::uint32_t r = 1;  // inverse twists up to depth r stay exact
    gf::FieldPtr field;   // coefficient field, contains F_q

    /// (q-1) q^r: the v-exponent of 1/theta.
    std::int64_t theta_step() const;
    std::int64_t q_pow(std::uint32_t k) const;
    const gf::GaloisField& F() const { return *field; }
};

using SpecPtr = std::shared_ptr<const UniformizerSpec>;

SpecPtr make_uniformizer(std::uint64_t q, std::uint32_t r, gf::FieldPtr field);

class LaurentScalar {
public:
    using Term = std::pair<std::int64_t, gf::Elem>;

    LaurentScalar() = default;
    explicit LaurentScalar(SpecPtr spec, std::int64_t prec = kExact) : spec_(std::move(spec)), prec_(prec) {}

    static LaurentScalar zero(SpecPtr spec, std::int64_t prec = kExact) { return LaurentScalar(std::move(spec), prec); }
    static LaurentScalar constant(SpecPtr spec, gf::Elem c);
    static LaurentScalar one(SpecPtr spec);
    static LaurentScalar monomial(SpecPtr spec, gf::Elem c, std::int64_t exponent);
    /// theta = -v^{-(q-1)q^r}.
    static LaurentScalar theta(SpecPtr spec);
    /// Builds from unsorted terms; zero coefficients and exponents above prec are dropped.
    static LaurentScalar from_terms(SpecPtr spec, std::vector<Term> terms, std::int64_t prec);

    const SpecPtr& spec() const { return spec_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::int64_t prec() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact; }

    /// True when no digit is nonzero up to the precision.
    bool is_zero() const { return terms_.empty(); }
    /// Valuation of the leading term; throws when the value is zero to precision.
    std::int64_t valuation() const;
    /// Valuation, or prec + 1 when zero to precision (a lower bound).
    std::int64_t valuation_bound() const;
    gf::Elem leading_coefficient() const;
    gf::Elem coefficient(std::int64_t exponent) const;

    LaurentScalar truncated(std::int64_t prec) const;

    LaurentScalar operator-() const;
    LaurentScalar operator+(const LaurentScalar& o) const;
    LaurentScalar operator-(const LaurentScalar& o) const;
    LaurentScalar operator*(const LaurentScalar& o) const;
    LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
    LaurentScalar& operator-=(const LaurentScalar& o) { return *this = *this - o; }
    LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

    LaurentScalar scaled(gf::Elem c) const;
    /// Multiplication by v^k.
    LaurentScalar shifted(std::int64_t k) const;
    LaurentScalar pow(std::uint64_t k) const;

    /// Equality of all digits up to the joint precision.
    bool agrees_with(const LaurentScalar& o) const;
    /// First exponent (up to joint precision) where the two differ, if any.
    std::optional<std::int64_t> first_difference(const LaurentScalar& o) const;

    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
        return a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

private:
    SpecPtr spec_;
    std::vector<Term> terms_;
    std::int64_t prec_ = kExact;
};

/// theta^{q^{-i}} = -v^{-(q-1) q^{r-i}} for 0 <= i <= r.
LaurentScalar theta_root(const SpecPtr& spec, std::uint32_t i);

/// 1/x with result precision min(target, inherited precision).
LaurentScalar laurent_inv(const LaurentScalar& x, std::int64_t target_prec);

/// x^{(n)}: coefficients to the q^n-th power, exponents scaled by q^n.
LaurentScalar laurent_qtwist(const LaurentScalar& x, std::int64_t n);

/// The Carlitz period under the convention pi = 1 / Omega(theta); prec is a v-exponent bound.
LaurentScalar carlitz_period(const SpecPtr& spec, std::int64_t prec);

/// Omega(theta) from its infinite product, to v-precision prec.
LaurentScalar omega_at_theta(const SpecPtr& spec, std::int64_t prec);

/// theta-degree of a nonzero scalar whose exponents are multiples of (q-1)q^r.
std::int64_t theta_degree(const LaurentScalar& x);

}  // namespace cmzv
