#include "cmzv/tmotive.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <algorithm>
#include <stdexcept>

namespace cmzv {

// ---- TateSeries -------------------------------------------------------------

TateSeries::TateSeries(SpecPtr spec, std::uint32_t t_deg, std::int64_t prec)
    : spec_(std::move(spec)), t_deg_(t_deg), c_(t_deg + 1, LaurentScalar::zero(spec_, prec)) {}

TateSeries TateSeries::constant(std::uint32_t t_deg, const LaurentScalar& c) {
    TateSeries out(c.spec(), t_deg);
    out.c_[0] = c;
    return out;
}

TateSeries TateSeries::linear(std::uint32_t t_deg, const LaurentScalar& a, const LaurentScalar& b) {
    TateSeries out(a.spec(), t_deg);
    out.c_[0] = a;
    if (t_deg >= 1) out.c_[1] = b;
    return out;
}

TateSeries TateSeries::operator+(const TateSeries& o) const {
    if (t_deg_ != o.t_deg_) throw std::invalid_argument("TateSeries: t-degree mismatch");
    TateSeries out = *this;
    for (std::uint32_t k = 0; k <= t_deg_; ++k) out.c_[k] += o.c_[k];
    return out;
}

TateSeries TateSeries::operator-() const {
    TateSeries out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

TateSeries TateSeries::operator-(const TateSeries& o) const { return *this + (-o); }

TateSeries TateSeries::operator*(const TateSeries& o) const {
    if (t_deg_ != o.t_deg_) throw std::invalid_argument("TateSeries: t-degree mismatch");
    TateSeries out(spec_, t_deg_);
    for (std::uint32_t i = 0; i <= t_deg_; ++i) {
        const auto& a = c_[i];
        if (a.is_zero() && a.is_exact()) continue;
        for (std::uint32_t j = 0; i + j <= t_deg_; ++j) {
            const auto& b = o.c_[j];
            if (b.is_zero() && b.is_exact()) continue;
            out.c_[i + j] += a * b;
        }
    }
    return out;
}

TateSeries TateSeries::scaled(gf::Elem c) const {
    TateSeries out = *this;
    for (auto& x : out.c_) x = x.scaled(c);
    return out;
}

TateSeries TateSeries::times(const LaurentScalar& c) const {
    TateSeries out = *this;
    for (auto& x : out.c_) x = x * c;
    return out;
}

TateSeries TateSeries::pow(std::uint64_t k) const {
    TateSeries out = constant(t_deg_, LaurentScalar::one(spec_));
    TateSeries b = *this;
    while (k) {
        if (k & 1) out = out * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return out;
}

TateSeries TateSeries::truncated(std::int64_t prec) const {
    TateSeries out = *this;
    for (auto& x : out.c_) x = x.truncated(prec);
    return out;
}

std::int64_t TateSeries::min_prec() const {
    std::int64_t p = kExact;
    for (const auto& x : c_) p = std::min(p, x.prec());
    return p;
}

std::optional<std::int64_t> TateSeries::min_valuation() const {
    std::optional<std::int64_t> v;
    for (const auto& x : c_)
        if (!x.is_zero()) v = v ? std::min(*v, x.valuation()) : x.valuation();
    return v;
}

bool TateSeries::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool TateSeries::is_exact() const { return min_prec() >= kExact; }

std::optional<std::pair<std::uint32_t, std::int64_t>> TateSeries::first_difference(const TateSeries& o) const {
    if (t_deg_ != o.t_deg_) throw std::invalid_argument("TateSeries: t-degree mismatch");
    for (std::uint32_t k = 0; k <= t_deg_; ++k)
        if (auto e = c_[k].first_difference(o.c_[k])) return std::make_pair(k, *e);
    return std::nullopt;
}

TateSeries tate_twist(const TateSeries& f, std::int64_t n) {
    TateSeries out(f.spec(), f.t_deg());
    for (std::uint32_t k = 0; k <= f.t_deg(); ++k) out.set_coeff(k, laurent_qtwist(f.coeff(k), n));
    return out;
}

TateSeries tate_inverse(const TateSeries& f, std::int64_t prec) {
    const std::uint32_t T = f.t_deg();
    TateSeries g(f.spec(), T);
    const LaurentScalar g0 = laurent_inv(f.coeff(0), prec);
    g.set_coeff(0, g0);
    for (std::uint32_t k = 1; k <= T; ++k) {
        LaurentScalar acc = LaurentScalar::zero(f.spec());
        for (std::uint32_t i = 1; i <= k; ++i) acc += f.coeff(i) * g.coeff(k - i);
        g.set_coeff(k, (-(g0 * acc)).truncated(prec));
    }
    return g;
}

LaurentScalar specialize(const TateSeries& f, const LaurentScalar& point) {
    LaurentScalar acc = LaurentScalar::zero(f.spec());
    for (std::uint32_t k = f.t_deg() + 1; k-- > 0;) acc = acc * point + f.coeff(k);
    return acc;
}

TateSeries omega(const SpecPtr& spec, std::uint32_t t_deg, std::int64_t prec) {
    const std::int64_t D = spec->theta_step();
    const std::int64_t lead = spec->q_pow(spec->r + 1);
    const auto& K = spec->F();
    // Factors with D q^i > prec - lead are 1 to the precision that matters;
    // the first omitted one fixes the precision of the product.
    std::int64_t qi = static_cast<std::int64_t>(spec->q);
    while (D * qi <= prec - lead) qi *= static_cast<std::int64_t>(spec->q);
    const std::int64_t known = lead + D * qi - 1;
    TateSeries acc = TateSeries::constant(t_deg, LaurentScalar::monomial(spec, K.one(), lead));
    for (std::int64_t qj = static_cast<std::int64_t>(spec->q); qj < qi; qj *= static_cast<std::int64_t>(spec->q))
        acc = (acc * TateSeries::linear(t_deg, LaurentScalar::one(spec), LaurentScalar::monomial(spec, K.one(), D * qj)))
                  .truncated(known);
    return acc.truncated(known);
}

// ---- Anderson-Thakur polynomials ---------------------------------------------

namespace {

// Bivariate helpers: index = t-degree, entries are theta-polynomials.
using Bivar = std::vector<PolyA>;

void bv_trim(Bivar& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Bivar bv_add(const Bivar& a, const Bivar& b, const gf::FieldPtr& K) {
    Bivar out(std::max(a.size(), b.size()), PolyA::zero(K));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    bv_trim(out);
    return out;
}

Bivar bv_mul(const Bivar& a, const Bivar& b, const gf::FieldPtr& K) {
    if (a.empty() || b.empty()) return {};
    Bivar out(a.size() + b.size() - 1, PolyA::zero(K));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    bv_trim(out);
    return out;
}

// Multiplication by a polynomial in t alone (coefficient vector of u).
Bivar bv_mul_t(const Bivar& a, const PolyA& u, const gf::FieldPtr& K) {
    Bivar ub;
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) ub.push_back(PolyA::constant(K, u.coeffs()[i]));
    bv_trim(ub);
    return bv_mul(a, ub, K);
}

// Exact division by a monic polynomial in t alone.
Bivar bv_div_t(Bivar a, const PolyA& u, const gf::FieldPtr& K) {
    const std::size_t du = static_cast<std::size_t>(u.degree());
    if (a.size() <= du) {
        bv_trim(a);
        if (!a.empty()) throw std::logic_error("at_poly: inexact division");
        return {};
    }
    Bivar quot(a.size() - du, PolyA::zero(K));
    for (std::size_t k = a.size(); k-- > du;) {
        const PolyA lead = a[k];
        if (lead.is_zero()) continue;
        quot[k - du] = lead;
        for (std::size_t i = 0; i <= du; ++i) a[k - du + i] = a[k - du + i] - lead.scaled(u.coeffs()[i]);
    }
    bv_trim(a);
    if (!a.empty()) throw std::logic_error("at_poly: inexact division");
    bv_trim(quot);
    return quot;
}

PolyA poly_lcm(const PolyA& a, const PolyA& b) {
    PolyA g = poly_gcd(a, b);
    return (a * b.divmod(g).first).monic();
}

}  // namespace

std::int64_t ATPoly::theta_degree() const {
    std::int64_t d = -1;
    for (const auto& c : coeffs) d = std::max(d, c.degree());
    return d;
}

PolyA ATPoly::diagonal() const {
    if (coeffs.empty()) return PolyA();
    const auto& K = coeffs.front().field();
    PolyA out = PolyA::zero(K);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out += coeffs[k] * PolyA::monomial(K, K->one(), k);
    return out;
}

ATPoly at_poly(const Setting& st, std::uint32_t n) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint32_t>, ATPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_tuple(st.q, st.K->size(), n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const auto& K = st.K;
    const auto q = st.q;
    // H_m for m <= n, built bottom-up.
    std::vector<Bivar> H(n + 1);
    H[0] = {PolyA::one(K)};
    for (std::uint32_t m = 1; m <= n; ++m) {
        // Terms i with q^i <= m: G_i(theta) H_{m-q^i} / (D_i(t) Gamma_{m-q^i+1}(t)).
        std::vector<std::pair<Bivar, PolyA>> terms;
        std::uint64_t qi = 1;
        for (std::uint32_t i = 0; qi <= m; ++i, qi *= q) {
            Bivar G = {PolyA::one(K)};
            for (std::uint32_t j = 1; j <= i; ++j) {
                Bivar f(qi + 1, PolyA::zero(K));
                f[0] = -PolyA::theta(K).qpow(q, j);
                f[qi] = PolyA::one(K);
                G = bv_mul(G, f, K);
            }
            terms.emplace_back(bv_mul(G, H[m - qi], K), carlitz_D(st, i) * gamma(st, m - qi));
        }
        PolyA C = PolyA::one(K);
        for (const auto& [num, den] : terms) C = poly_lcm(C, den);
        Bivar N;
        for (const auto& [num, den] : terms) N = bv_add(N, bv_mul_t(num, C.divmod(den).first, K), K);
        const PolyA Gm = gamma(st, m);
        const PolyA g = poly_gcd(Gm, C);
        H[m] = bv_mul_t(bv_div_t(N, C.divmod(g).first.monic(), K), Gm.divmod(g).first, K);
    }
    ATPoly out{H[n]};
    cache.emplace(key, out);
    return out;
}

TateSeries at_series(const Setting& st, const ATPoly& h, std::int64_t j, std::uint32_t t_deg) {
    TateSeries out(st.uni, t_deg);
    for (std::uint32_t k = 0; k < h.coeffs.size() && k <= t_deg; ++k)
        out.set_coeff(k, laurent_qtwist(to_laurent(h.coeffs[k], st.uni), j));
    return out;
}

TateSeries t_minus_theta_root(const Setting& st, std::uint32_t h, std::uint32_t t_deg) {
    return TateSeries::linear(t_deg, -theta_root(st.uni, h), LaurentScalar::one(st.uni));
}

TateSeries T_term(const Setting& st, std::uint32_t s, std::uint32_t j, std::int64_t color, std::uint32_t t_deg,
                  bool literal) {
    if (s == 0 || j == 0) throw std::invalid_argument("T_term: need s, j >= 1");
    const auto& K = *st.K;
    TateSeries out = at_series(st, at_poly(st, s - 1), -static_cast<std::int64_t>(j), t_deg);
    const std::uint32_t top = literal ? j : j - 1;
    for (std::uint32_t h = 0; h <= top; ++h) out = out * t_minus_theta_root(st, h, t_deg).pow(s);
    return out.scaled(K.inv(K.pow(st.color(color), j)));
}

// ---- L and L* -----------------------------------------------------------------

namespace {

// The building block H_{s-1} Omega^s at precision pv.
TateSeries h_omega(const Setting& st, std::uint32_t s, std::uint32_t t_deg, std::int64_t pv) {
    TateSeries w = omega(st.uni, t_deg, pv).pow(s);
    return (at_series(st, at_poly(st, s - 1), 0, t_deg) * w).truncated(pv);
}

// Sum over chains d_1 ? d_2 ? ... ? d_n >= 0 (strict or not) with d_1 < cutoff.
TateSeries chain_sum(const Setting& st, const Index& idx, std::uint32_t t_deg, std::int64_t pv, bool strict,
                     SeriesInfo* info) {
    const std::size_t n = idx.s.size();
    if (n == 0) return TateSeries::constant(t_deg, LaurentScalar::one(st.uni));
    idx.validate();
    const auto& K = *st.K;
    std::vector<TateSeries> base;
    for (auto s : idx.s) base.push_back(h_omega(st, s, t_deg, pv));
    const auto m0 = base[0].min_valuation();
    if (!m0 || *m0 <= 0) throw std::logic_error("L series: H Omega^s must have positive valuation");
    // Terms with d_1 >= cutoff have valuation >= q^{d_1} m0 > pv.
    std::uint32_t cutoff = 0;
    for (std::int64_t v = *m0; v <= pv; v *= static_cast<std::int64_t>(st.q)) ++cutoff;
    if (info) {
        info->d_cutoff = cutoff;
        info->base_valuation = *m0;
    }
    if (cutoff == 0) return TateSeries(st.uni, t_deg, pv);
    auto term = [&](std::size_t i, std::uint32_t d) {
        return tate_twist(base[i], d).scaled(K.pow(st.color(idx.colors[i]), d)).truncated(pv);
    };
    // C[e] = sum over chains of letters i..n whose top degree is < e (strict)
    // or <= e (non-strict).
    std::vector<TateSeries> C(cutoff, TateSeries::constant(t_deg, LaurentScalar::one(st.uni)));
    for (std::size_t i = n; i-- > 0;) {
        std::vector<TateSeries> next(cutoff, TateSeries(st.uni, t_deg, pv));
        TateSeries run(st.uni, t_deg, pv);
        for (std::uint32_t e = 0; e < cutoff; ++e) {
            if (strict) {
                next[e] = run;
                run = (run + term(i, e) * C[e]).truncated(pv);
            } else {
                run = (run + term(i, e) * C[e]).truncated(pv);
                next[e] = run;
            }
        }
        if (i == 0) return strict ? run : next[cutoff - 1];
        C = std::move(next);
    }
    return TateSeries(st.uni, t_deg, pv);
}

}  // namespace

TateSeries L_series(const Setting& st, const Index& idx, std::uint32_t t_deg, std::int64_t pv, SeriesInfo* info) {
    return chain_sum(st, idx, t_deg, pv, true, info);
}

TateSeries L_star_series(const Setting& st, const Index& idx, std::uint32_t t_deg, std::int64_t pv, SeriesInfo* info) {
    return chain_sum(st, idx, t_deg, pv, false, info);
}

// ---- point evaluation -----------------------------------------------------------

LaurentScalar omega_at(const Setting& st, std::uint32_t d, std::uint32_t N, std::int64_t pv) {
    const auto& spec = st.uni;
    if (d < N) return LaurentScalar::zero(spec);
    const auto& K = *st.K;
    const std::int64_t D = spec->theta_step();
    const std::int64_t lead = spec->q_pow(spec->r + 1 + d);
    const std::int64_t qN = spec->q_pow(N);
    // 1 - theta^{q^N - q^{i+d}} = 1 - v^{D (q^{i+d} - q^N)}; the first omitted
    // factor fixes the precision.
    auto ex = [&](std::uint32_t i) { return D * (spec->q_pow(i + d) - qN); };
    std::uint32_t stop = 1;
    while (ex(stop) <= pv - lead) ++stop;
    const std::int64_t known = ex(stop) - 1;
    LaurentScalar acc = LaurentScalar::one(spec);
    for (std::uint32_t i = 1; i < stop; ++i)
        acc = (acc * (LaurentScalar::one(spec) + LaurentScalar::monomial(spec, K.neg(K.one()), ex(i)))).truncated(known);
    acc = acc.truncated(known);
    return acc.shifted(lead);
}

namespace {

// H^{(d)} at t = theta^{q^N}: sum h_{a,k} theta^{a q^d + k q^N}, exact.
LaurentScalar at_poly_at(const Setting& st, const ATPoly& h, std::uint32_t d, std::uint32_t N) {
    const auto& spec = st.uni;
    const auto& K = *st.K;
    const std::int64_t D = spec->theta_step();
    const std::int64_t qd = spec->q_pow(d), qN = spec->q_pow(N);
    std::vector<LaurentScalar::Term> terms;
    for (std::size_t k = 0; k < h.coeffs.size(); ++k) {
        const auto& c = h.coeffs[k].coeffs();
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c[a].is_zero()) continue;
            const std::int64_t e = static_cast<std::int64_t>(a) * qd + static_cast<std::int64_t>(k) * qN;
            terms.emplace_back(-e * D, (e % 2) ? K.neg(c[a]) : c[a]);
        }
    }
    return LaurentScalar::from_terms(spec, std::move(terms), kExact);
}

// Lower bound for the valuation of (H_{s-1} Omega^s)^{(d)} at theta^{q^N}.
std::int64_t h_omega_bound(const Setting& st, std::uint32_t s, std::uint32_t d, std::uint32_t N) {
    const auto h = at_poly(st, s - 1);
    const auto& spec = st.uni;
    return static_cast<std::int64_t>(s) * spec->q_pow(spec->r + 1 + d) -
           spec->theta_step() * (h.theta_degree() * spec->q_pow(d) + static_cast<std::int64_t>(h.t_degree()) * spec->q_pow(N));
}

}  // namespace

LaurentScalar HOmega_at(const Setting& st, std::uint32_t s, std::uint32_t d, std::uint32_t N, std::int64_t pv) {
    if (d < N) return LaurentScalar::zero(st.uni);
    const LaurentScalar h = at_poly_at(st, at_poly(st, s - 1), d, N);
    if (h.is_zero()) return LaurentScalar::zero(st.uni);
    const std::int64_t lead = st.uni->q_pow(st.uni->r + 1 + d);
    // Omega factor precision so that the product is known through pv.
    const std::int64_t need = pv - h.valuation() - static_cast<std::int64_t>(s - 1) * lead;
    return (h * omega_at(st, d, N, need).pow(s)).truncated(pv);
}

LaurentScalar L_at(const Setting& st, const Index& idx, std::uint32_t N, std::int64_t pv, SeriesInfo* info) {
    const std::size_t n = idx.s.size();
    if (n == 0) return LaurentScalar::one(st.uni);
    idx.validate();
    const auto& K = *st.K;
    // Every letter has d_i >= N; deeper letters can contribute at most `slack`
    // negative valuation.
    std::int64_t slack = 0;
    for (std::size_t i = 1; i < n; ++i) slack += std::max<std::int64_t>(0, -h_omega_bound(st, idx.s[i], N, N));
    std::uint32_t cutoff = N + static_cast<std::uint32_t>(n) - 1;
    while (h_omega_bound(st, idx.s[0], cutoff, N) - slack <= pv) ++cutoff;
    if (info) {
        info->d_cutoff = cutoff;
        info->base_valuation = h_omega_bound(st, idx.s[0], N, N);
    }
    std::int64_t work = pv + slack;
    for (std::size_t i = 0; i < n; ++i) work += std::max<std::int64_t>(0, -h_omega_bound(st, idx.s[i], N, N));
    auto term = [&](std::size_t i, std::uint32_t d) {
        return HOmega_at(st, idx.s[i], d, N, work).scaled(K.pow(st.color(idx.colors[i]), d));
    };
    std::vector<LaurentScalar> C(cutoff, LaurentScalar::one(st.uni));
    for (std::size_t i = n; i-- > 0;) {
        std::vector<LaurentScalar> next(cutoff, LaurentScalar::zero(st.uni));
        LaurentScalar run = LaurentScalar::zero(st.uni);
        for (std::uint32_t e = N; e < cutoff; ++e) {
            next[e] = run;
            run = (run + term(i, e) * C[e]).truncated(work);
        }
        if (i == 0) return run.truncated(pv);
        C = std::move(next);
    }
    return LaurentScalar::zero(st.uni, pv);
}

// ---- matrices ---------------------------------------------------------------------

namespace {

bool exact_zero(const TateSeries& f) { return f.is_zero() && f.is_exact(); }

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), m = b.front().size(), k = b.size();
    const auto& proto = b.front().front();
    Matrix out(n, std::vector<TateSeries>(m, TateSeries(proto.spec(), proto.t_deg())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (exact_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (exact_zero(b[l][j])) continue;
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t na = a.size(), nb = b.size();
    const auto& proto = a.front().front();
    Matrix out(na * nb, std::vector<TateSeries>(na * nb, TateSeries(proto.spec(), proto.t_deg())));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            if (exact_zero(a[i][j])) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    if (!exact_zero(b[k][l])) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
        }
    return out;
}

Matrix twist_matrix(const Matrix& a, std::int64_t n) {
    Matrix out = a;
    for (auto& row : out)
        for (auto& x : row) x = tate_twist(x, n);
    return out;
}

// ---- motives ----------------------------------------------------------------------

SettingPtr motive_setting(std::uint64_t q, std::uint32_t r, const Index& idx, std::uint32_t depth) {
    idx.validate();
    const std::uint32_t R = std::max(r, depth);
    for (std::uint32_t ext = 1;; ++ext) {
        auto st = make_setting(q, r, ext, R);  // throws past the field size guard
        bool ok = true;
        for (auto c : idx.colors) {
            try {
                gf::solve_mu_in(*st->K, st->color(c), q, r);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        if (ok) return st;
    }
}

namespace {

// Sum over r >= m_{i-1} > ... > m_j >= 1 of prod_g T_{s_g, m_g}, letters j..i-1 (0-based, half-open).
TateSeries t_chain(const Setting& st, const Index& idx, std::size_t j, std::size_t i, std::uint32_t r, std::uint32_t t_deg,
                   bool literal) {
    if (i == j) return TateSeries::constant(t_deg, LaurentScalar::one(st.uni));
    TateSeries acc(st.uni, t_deg);
    // Letter g gets m_g; m increases with g.
    std::function<void(std::size_t, std::uint32_t, const TateSeries&)> rec = [&](std::size_t g, std::uint32_t lo,
                                                                                   const TateSeries& prod) {
        if (g == i) {
            acc += prod;
            return;
        }
        const std::uint32_t remaining = static_cast<std::uint32_t>(i - g);
        for (std::uint32_t m = lo; m + remaining - 1 <= r; ++m)
            rec(g + 1, m + 1, prod * T_term(st, idx.s[g], m, idx.colors[g], t_deg, literal));
    };
    rec(j, 1, TateSeries::constant(t_deg, LaurentScalar::one(st.uni)));
    return acc;
}

std::vector<std::uint32_t> tail_weights(const Index& idx) {
    std::vector<std::uint32_t> w(idx.s.size() + 1, 0);
    for (std::size_t i = idx.s.size(); i-- > 0;) w[i] = w[i + 1] + idx.s[i];
    return w;
}

Index sub_index(const Index& idx, std::size_t j, std::size_t i, bool reversed) {
    Index out;
    for (std::size_t g = j; g < i; ++g) {
        out.s.push_back(idx.s[g]);
        out.colors.push_back(idx.colors[g]);
    }
    if (reversed) {
        std::reverse(out.s.begin(), out.s.end());
        std::reverse(out.colors.begin(), out.colors.end());
    }
    return out;
}

// prod_{m=0}^{r-1} (t - theta^{q^{-m}})^w.
TateSeries p_factor(const Setting& st, std::uint32_t r, std::uint32_t w, std::uint32_t t_deg) {
    TateSeries out = TateSeries::constant(t_deg, LaurentScalar::one(st.uni));
    for (std::uint32_t m = 0; m < r; ++m) out = out * t_minus_theta_root(st, m, t_deg).pow(w);
    return out;
}

gf::Elem mu_product(const Setting& st, const std::vector<gf::Elem>& mu, std::size_t j, std::size_t i) {
    gf::Elem out = st.K->one();
    for (std::size_t l = j; l < i; ++l) out = st.K->mul(out, mu[l]);
    return out;
}

Matrix phi_matrix(const Setting& st, const Index& idx, const std::vector<gf::Elem>& mu, std::uint32_t r,
                  std::uint32_t t_deg, bool literal) {
    const std::size_t n = idx.s.size();
    const auto w = tail_weights(idx);
    Matrix Phi(n + 1, std::vector<TateSeries>(n + 1, TateSeries(st.uni, t_deg)));
    for (std::size_t i = 0; i <= n; ++i) {
        const TateSeries P = p_factor(st, r, w[i], t_deg);
        for (std::size_t j = 0; j <= i; ++j) {
            if (i - j > r) continue;  // no strictly increasing chain fits in [1, r]
            Phi[i][j] = (P * t_chain(st, idx, j, i, r, t_deg, literal)).scaled(mu_product(st, mu, j, i));
        }
    }
    return Phi;
}

std::int64_t min_valuation_of(const Matrix& m) {
    std::int64_t v = 0;
    for (const auto& row : m)
        for (const auto& x : row)
            if (auto mv = x.min_valuation()) v = std::min(v, *mv);
    return v;
}

}  // namespace

TrivData build_triv(const MotiveSpec& ms) {
    return build_triv(ms, motive_setting(ms.q, ms.r, ms.index, ms.depth));
}

TrivData build_triv(const MotiveSpec& ms, const SettingPtr& st) {
    ms.index.validate();
    if (st->q != ms.q || st->r != ms.r) throw std::invalid_argument("build_triv: setting does not match q, r");
    if (st->uni->r < ms.r) throw std::invalid_argument("build_triv: uniformizer depth below r");
    TrivData td;
    td.st = st;
    td.spec = ms;
    td.r = ms.r;
    const auto& idx = ms.index;
    const std::size_t n = idx.s.size();
    for (auto c : idx.colors) td.mu.push_back(gf::solve_mu_in(*st->K, st->color(c), ms.q, ms.r));

    td.Phi = phi_matrix(*st, idx, td.mu, ms.r, ms.t_deg, ms.literal_t_term);
    td.pv = v_precision(*st, ms.prec);
    // Psi^{(-r)} divides exponents by q^r; Phi Psi loses at most -val(Phi).
    td.build_pv = td.pv * st->uni->q_pow(ms.r) - min_valuation_of(td.Phi);
    const std::int64_t P = td.build_pv;
    const auto w = tail_weights(idx);
    const TateSeries Om = omega(st->uni, ms.t_deg, P);
    const TateSeries Oinv = tate_inverse(Om, P);

    td.Psi.assign(n + 1, std::vector<TateSeries>(n + 1, TateSeries(st->uni, ms.t_deg)));
    td.Upsilon = td.Psi;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const gf::Elem m = mu_product(*st, td.mu, j, i);
            td.Psi[i][j] = (L_series(*st, sub_index(idx, j, i, false), ms.t_deg, P) * Om.pow(w[i])).truncated(P).scaled(m);
            TateSeries u = (L_star_series(*st, sub_index(idx, j, i, true), ms.t_deg, P) * Oinv.pow(w[j])).scaled(m);
            td.Upsilon[i][j] = ((i - j) % 2) ? -u : u;
        }
    return td;
}

TrivReport check_trivialization(const TrivData& td, bool check_upsilon) {
    TrivReport rep;
    const auto& st = *td.st;
    const std::size_t N = td.Psi.size();
    const std::uint32_t t_deg = td.Psi[0][0].t_deg();
    std::int64_t checked = kExact;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        rep.ok = false;
        if (rep.detail.empty()) rep.detail = msg;
    };
    auto compare = [&](const TateSeries& a, const TateSeries& b, bool& flag, const std::string& what) {
        ++rep.entries_checked;
        const std::int64_t p = std::min(a.min_prec(), b.min_prec());
        checked = std::min(checked, p);
        if (p < td.pv) fail(flag, what + ": precision " + std::to_string(p) + " below " + std::to_string(td.pv));
        if (auto d = a.first_difference(b))
            fail(flag, what + ": differs at t^" + std::to_string(d->first) + " v^" + std::to_string(d->second));
    };
    auto entry = [](std::size_t i, std::size_t j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; };

    // Shape: lower triangular, Phi_{N,N} = 1.
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (!td.Phi[i][j].is_zero() || !td.Psi[i][j].is_zero()) fail(rep.structure, "nonzero entry above the diagonal");
    if (td.factors.empty()) {
        const TateSeries one = TateSeries::constant(t_deg, LaurentScalar::one(st.uni));
        if (td.Phi[N - 1][N - 1].first_difference(one)) fail(rep.structure, "Phi corner is not 1");
    }

    // Psi^{(-r)} = Phi Psi.
    const Matrix lhs = twist_matrix(td.Psi, -static_cast<std::int64_t>(td.r));
    const Matrix rhs = matmul(td.Phi, td.Psi);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j <= i; ++j) compare(lhs[i][j], rhs[i][j], rep.difference_equation, "Psi^(-r) vs Phi Psi " + entry(i, j));

    // det Phi(0): product of the diagonal constants.
    {
        LaurentScalar det = LaurentScalar::one(st.uni);
        for (std::size_t i = 0; i < N; ++i) det = det * td.Phi[i][i].coeff(0);
        if (det.is_zero()) fail(rep.det_nonzero, "det Phi(0) vanishes");
        if (td.factors.empty()) {
            // prod_i prod_{m<r} (-theta^{q^{-m}})^{w_i}
            const auto w = tail_weights(td.spec.index);
            LaurentScalar expect = LaurentScalar::one(st.uni);
            for (std::size_t i = 0; i < N; ++i)
                for (std::uint32_t m = 0; m < td.r; ++m) expect = expect * (-theta_root(st.uni, m)).pow(w[i]);
            if (det.first_difference(expect)) fail(rep.det_nonzero, "det Phi(0) differs from its closed form");
        }
    }

    if (td.factors.empty()) {
        // L(s)^{(-r)} = prod xi^r sum_k L(s_1..s_{k-1}) Omega^{s_k+..+s_n} sum prod T.
        const auto& idx = td.spec.index;
        const std::size_t n = idx.s.size();
        const std::int64_t P = td.build_pv;
        const auto& K = *st.K;
        const auto w = tail_weights(idx);
        const TateSeries Om = omega(st.uni, t_deg, P);
        TateSeries closed(st.uni, t_deg);
        for (std::size_t k = 0; k <= n; ++k)
            closed += L_series(st, sub_index(idx, 0, k, false), t_deg, P) * Om.pow(w[k]) *
                      t_chain(st, idx, k, n, td.r, t_deg, td.spec.literal_t_term);
        gf::Elem xr = K.one();
        for (auto c : idx.colors) xr = K.mul(xr, K.pow(st.color(c), td.r));
        closed = closed.scaled(xr);
        const TateSeries twisted = tate_twist(L_series(st, idx, t_deg, P), -static_cast<std::int64_t>(td.r));
        compare(twisted, closed, rep.closed_form, "twisted L closed form");

        if (check_upsilon && !td.Upsilon.empty()) {
            const Matrix a = matmul(td.Upsilon, td.Psi), b = matmul(td.Psi, td.Upsilon);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    TateSeries id(st.uni, t_deg);
                    if (i == j) id = TateSeries::constant(t_deg, LaurentScalar::one(st.uni));
                    compare(a[i][j], id, rep.upsilon_inverse, "Upsilon Psi " + entry(i, j));
                    compare(b[i][j], id, rep.upsilon_inverse, "Psi Upsilon " + entry(i, j));
                }
        }
    }
    rep.max_checked_exponent = checked;
    return rep;
}

std::vector<LaurentScalar> psi_column_at(const TrivData& td, std::uint32_t N, std::int64_t pv) {
    const auto& st = *td.st;
    if (!td.factors.empty()) {
        std::vector<LaurentScalar> col{LaurentScalar::one(st.uni)};
        for (const auto& f : td.factors) {
            auto c = psi_column_at(f, N, pv);
            std::vector<LaurentScalar> next;
            for (const auto& a : col)
                for (const auto& b : c) next.push_back((a * b).truncated(pv));
            col = std::move(next);
        }
        return col;
    }
    const auto& idx = td.spec.index;
    const std::size_t n = idx.s.size();
    const auto w = tail_weights(idx);
    std::vector<LaurentScalar> col;
    for (std::size_t i = 0; i <= n; ++i) {
        const gf::Elem m = mu_product(st, td.mu, 0, i);
        if (w[i] > 0 && N > 0) {
            col.push_back(LaurentScalar::zero(st.uni));  // Omega(theta^{q^N}) = 0
            continue;
        }
        const LaurentScalar L = L_at(st, sub_index(idx, 0, i, false), N, pv);
        LaurentScalar om = LaurentScalar::one(st.uni);
        if (w[i] > 0) {
            // Omega(theta)^w known through pv - val(L).
            const std::int64_t lead = st.uni->q_pow(st.uni->r + 1);
            om = omega_at(st, 0, 0, pv - L.valuation_bound() - static_cast<std::int64_t>(w[i] - 1) * lead).pow(w[i]);
        }
        col.push_back((L * om).scaled(m).truncated(pv));
    }
    return col;
}

TrivData kronecker_motive(const std::vector<MotiveSpec>& parts, const std::vector<std::uint32_t>& multiplicities) {
    if (parts.empty() || parts.size() != multiplicities.size()) throw std::invalid_argument("kronecker_motive: bad parts");
    const auto& first = parts.front();
    Index all;
    std::uint32_t depth = first.r;
    for (const auto& p : parts) {
        if (p.q != first.q || p.r != first.r || p.t_deg != first.t_deg)
            throw std::invalid_argument("kronecker_motive: parts must share q, r and t_deg");
        all.s.insert(all.s.end(), p.index.s.begin(), p.index.s.end());
        all.colors.insert(all.colors.end(), p.index.colors.begin(), p.index.colors.end());
        depth = std::max(depth, p.depth);
    }
    auto st = motive_setting(first.q, first.r, all, depth);
    TrivData out;
    out.st = st;
    out.spec = first;
    out.spec.index = all;
    out.r = first.r;
    bool started = false;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        TrivData td = build_triv(parts[k], st);
        td.Upsilon.clear();
        for (std::uint32_t rep = 0; rep < multiplicities[k]; ++rep) {
            if (!started) {
                out.Phi = td.Phi;
                out.Psi = td.Psi;
                out.pv = td.pv;
                out.build_pv = td.build_pv;
                started = true;
            } else {
                out.Phi = kron(out.Phi, td.Phi);
                out.Psi = kron(out.Psi, td.Psi);
                out.pv = std::min(out.pv, td.pv);
                out.build_pv = std::min(out.build_pv, td.build_pv);
            }
            out.factors.push_back(td);
        }
    }
    if (!started) throw std::invalid_argument("kronecker_motive: empty product");
    return out;
}

}  // namespace cmzv
