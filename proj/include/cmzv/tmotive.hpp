#pragma once
// t-motivic side: truncated Tate-algebra series, Omega, Anderson-Thakur
// polynomials, the deformation series L and L*, and the level-r matrices
// Phi, Psi, Upsilon with their Frobenius difference equation.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmzv/powersum.hpp"
#include "cmzv/ringA.hpp"
#include "cmzv/scalars.hpp"
#include "cmzv/setting.hpp"

namespace cmzv {

/// Polynomial in t of degree <= t_deg with Laurent coefficients; products
/// drop t-powers above t_deg.
class TateSeries {
public:
    TateSeries() = default;
    TateSeries(SpecPtr spec, std::uint32_t t_deg, std::int64_t prec = kExact);

    static TateSeries constant(std::uint32_t t_deg, const LaurentScalar& c);
    /// a + b t.
    static TateSeries linear(std::uint32_t t_deg, const LaurentScalar& a, const LaurentScalar& b);

    const SpecPtr& spec() const { return spec_; }
    std::uint32_t t_deg() const { return t_deg_; }
    const LaurentScalar& coeff(std::uint32_t k) const { return c_.at(k); }
    void set_coeff(std::uint32_t k, LaurentScalar x) { c_.at(k) = std::move(x); }
    const std::vector<LaurentScalar>& coeffs() const { return c_; }

    TateSeries operator+(const TateSeries& o) const;
    TateSeries operator-(const TateSeries& o) const;
    TateSeries operator-() const;
    TateSeries operator*(const TateSeries& o) const;
    TateSeries& operator+=(const TateSeries& o) { return *this = *this + o; }
    TateSeries& operator*=(const TateSeries& o) { return *this = *this * o; }
    TateSeries scaled(gf::Elem c) const;
    TateSeries times(const LaurentScalar& c) const;
    TateSeries pow(std::uint64_t k) const;
    TateSeries truncated(std::int64_t prec) const;

    /// Smallest coefficient precision.
    std::int64_t min_prec() const;
    /// Smallest valuation among coefficients that are nonzero to precision.
    std::optional<std::int64_t> min_valuation() const;
    bool is_zero() const;
    bool is_exact() const;
    /// First (t-exponent, v-exponent) where two series differ within joint precision.
    std::optional<std::pair<std::uint32_t, std::int64_t>> first_difference(const TateSeries& o) const;
    bool agrees_with(const TateSeries& o) const { return !first_difference(o).has_value(); }

private:
    SpecPtr spec_;
    std::uint32_t t_deg_ = 0;
    std::vector<LaurentScalar> c_;
};

/// Coefficientwise Frobenius twist; n < 0 needs divisible exponents.
TateSeries tate_twist(const TateSeries& f, std::int64_t n);

/// 1/f for f with invertible constant term, coefficients to precision prec.
TateSeries tate_inverse(const TateSeries& f, std::int64_t prec);

/// Evaluation of a polynomial with exact coefficients at a scalar point.
LaurentScalar specialize(const TateSeries& f, const LaurentScalar& point);

/// Omega = v^{q^{R+1}} prod_{i>=1} (1 + v^{D q^i} t), to v-precision prec.
TateSeries omega(const SpecPtr& spec, std::uint32_t t_deg, std::int64_t prec);

/// Bivariate polynomial in (theta, t): coeffs[k] is the theta-polynomial of t^k.
struct ATPoly {
    std::vector<PolyA> coeffs;
    std::int64_t theta_degree() const;
    std::uint32_t t_degree() const { return coeffs.empty() ? 0 : static_cast<std::uint32_t>(coeffs.size() - 1); }
    /// H(theta, theta) as a polynomial in theta.
    PolyA diagonal() const;
};

/// Anderson-Thakur polynomial H_n, from the generating series
/// sum_n H_n / Gamma_{n+1}(t) x^n = (1 - sum_i G_i / D_i(t) x^{q^i})^{-1}.
ATPoly at_poly(const Setting& st, std::uint32_t n);

/// H^{(j)} as a Tate series; j >= -R.
TateSeries at_series(const Setting& st, const ATPoly& h, std::int64_t j, std::uint32_t t_deg);

/// (t - theta^{q^{-h}}) for 0 <= h <= R.
TateSeries t_minus_theta_root(const Setting& st, std::uint32_t h, std::uint32_t t_deg);

/// T_{s,j}(xi) = xi^{-j} H_{s-1}^{(-j)} prod_{h=0}^{j-1} (t - theta^{q^{-h}})^s.
/// With literal = true the product runs to h = j.
TateSeries T_term(const Setting& st, std::uint32_t s, std::uint32_t j, std::int64_t color, std::uint32_t t_deg,
                  bool literal = false);

struct SeriesInfo {
    std::uint32_t d_cutoff = 0;
    std::int64_t base_valuation = 0;  // min valuation of H Omega^s for the leading letter
};

/// L(s; xi) = sum_{d_1 > ... > d_n >= 0} prod xi_i^{d_i} (H_{s_i - 1} Omega^{s_i})^{(d_i)}, to v-precision pv.
TateSeries L_series(const Setting& st, const Index& idx, std::uint32_t t_deg, std::int64_t pv, SeriesInfo* info = nullptr);
/// Same with d_1 >= ... >= d_n >= 0.
TateSeries L_star_series(const Setting& st, const Index& idx, std::uint32_t t_deg, std::int64_t pv,
                         SeriesInfo* info = nullptr);

/// (H_{s-1} Omega^s)^{(d)} evaluated at t = theta^{q^N}, to v-precision pv.
LaurentScalar HOmega_at(const Setting& st, std::uint32_t s, std::uint32_t d, std::uint32_t N, std::int64_t pv);
/// Omega^{(d)} at theta^{q^N}: exactly zero for d < N.
LaurentScalar omega_at(const Setting& st, std::uint32_t d, std::uint32_t N, std::int64_t pv);
/// L(s; xi) at t = theta^{q^N}, with a certified d-cutoff.
LaurentScalar L_at(const Setting& st, const Index& idx, std::uint32_t N, std::int64_t pv, SeriesInfo* info = nullptr);

using Matrix = std::vector<std::vector<TateSeries>>;

struct MotiveSpec {
    std::uint64_t q = 3;
    std::uint32_t r = 1;
    Index index;
    std::uint32_t t_deg = 10;
    std::int64_t prec = 60;  // theta-digits
    bool literal_t_term = false;
    std::uint32_t depth = 0;  // uniformizer depth, 0 means r
};

struct TrivData {
    SettingPtr st;
    MotiveSpec spec;
    std::vector<gf::Elem> mu;
    Matrix Phi;
    Matrix Psi;
    Matrix Upsilon;
    std::int64_t pv = 0;        // comparison precision (v-exponent)
    std::int64_t build_pv = 0;  // precision Psi was built at
    std::uint32_t r = 1;        // Psi^{(-r)} = Phi Psi
    std::vector<TrivData> factors;  // nonempty for Kronecker products
};

/// K large enough for every mu_i, uniformizer depth max(r, depth).
SettingPtr motive_setting(std::uint64_t q, std::uint32_t r, const Index& idx, std::uint32_t depth = 0);

TrivData build_triv(const MotiveSpec& ms);
TrivData build_triv(const MotiveSpec& ms, const SettingPtr& st);

struct TrivReport {
    bool ok = true;
    bool difference_equation = true;
    bool upsilon_inverse = true;
    bool closed_form = true;
    bool det_nonzero = true;
    bool structure = true;
    std::int64_t max_checked_exponent = 0;
    std::size_t entries_checked = 0;
    std::string detail;
};

/// Psi^{(-r)} = Phi Psi, Upsilon Psi = Psi Upsilon = I, the twisted-L closed
/// form, det Phi(0) != 0 and the triangular shape.
TrivReport check_trivialization(const TrivData& td, bool check_upsilon = true);

/// Column 1 of Psi at t = theta^{q^N}.
std::vector<LaurentScalar> psi_column_at(const TrivData& td, std::uint32_t N, std::int64_t pv);

/// Kronecker product of motives with multiplicities. All parts share q and
/// the color level r; only Phi and Psi are formed.
TrivData kronecker_motive(const std::vector<MotiveSpec>& parts, const std::vector<std::uint32_t>& multiplicities);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix twist_matrix(const Matrix& a, std::int64_t n);

}  // namespace cmzv
