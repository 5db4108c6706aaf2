#include "doctest.h"

#include "cmzv/tmotive.hpp"

using namespace cmzv;

namespace {

// Gamma_{s_1} ... Gamma_{s_n} zeta(s; xi) Omega(theta)^w, through pv.
LaurentScalar specialized_zeta(const Setting& st, const Index& idx, std::int64_t pv) {
    const auto spec = st.uni;
    LaurentScalar g = LaurentScalar::one(spec);
    for (auto s : idx.s) g = g * to_laurent(gamma(st, s - 1), spec);
    const std::int64_t prec = pv / spec->theta_step() + 2 * static_cast<std::int64_t>(idx.weight()) + 10;
    const auto z = cmzv::cmzv(st, idx, prec).value;
    const auto om = omega_at_theta(spec, pv + 10 * static_cast<std::int64_t>(idx.weight()) * spec->theta_step());
    return (g * z * om.pow(idx.weight())).truncated(pv);
}

}  // namespace

TEST_CASE("Omega satisfies its difference equation") {
    for (auto [q, r] : {std::pair<std::uint64_t, std::uint32_t>{3, 1}, {2, 2}, {4, 1}}) {
        auto st = make_setting(q, r);
        const std::int64_t P = 200;
        auto om_hi = omega(st->uni, 8, P * static_cast<std::int64_t>(q));
        auto lhs = tate_twist(om_hi, -1);
        auto rhs = t_minus_theta_root(*st, 0, 8) * omega(st->uni, 8, P);
        CHECK(lhs.min_prec() >= P);
        CHECK(lhs.agrees_with(rhs));
        // Tate-algebra decay: the t^k coefficients have growing valuations.
        auto om = omega(st->uni, 4, 10000);
        for (std::uint32_t k = 1; k <= 3; ++k)
            if (!om.coeff(k + 1).is_zero()) CHECK(om.coeff(k + 1).valuation() > om.coeff(k).valuation());
    }
}

TEST_CASE("Anderson-Thakur polynomials") {
    for (std::uint64_t q : {2, 3, 4}) {
        auto st = make_setting(q, 1);
        const auto& K = st->K;
        for (std::uint32_t n = 0; n < q; ++n) {
            auto h = at_poly(*st, n);
            CHECK(h.coeffs.size() == 1);
            CHECK(h.coeffs[0] == PolyA::one(K));
        }
        // H_q = 2 t^q - t - theta^q
        auto hq = at_poly(*st, static_cast<std::uint32_t>(q));
        std::vector<PolyA> expect(q + 1, PolyA::zero(K));
        expect[0] = -PolyA::monomial(K, K->one(), q);
        expect[1] = -PolyA::one(K);
        expect[q] = PolyA::constant(K, K->from_int(2));
        while (!expect.empty() && expect.back().is_zero()) expect.pop_back();
        CHECK(hq.coeffs == expect);
        for (std::uint32_t n = 0; n <= 3 * q; ++n) {
            auto h = at_poly(*st, n);
            CHECK(h.diagonal() == gamma(*st, n));                                          // H_n(theta, theta) = Gamma_{n+1}
            CHECK(h.theta_degree() * static_cast<std::int64_t>(q - 1) < static_cast<std::int64_t>((n + 1) * q));  // degree bound
        }
    }
}

TEST_CASE("Anderson-Thakur identity on a grid") {
    for (std::uint64_t q : {2, 3}) {
        auto st = make_setting(q, 1);
        const std::int64_t pv = v_precision(*st, 40);
        const auto om = omega_at_theta(st->uni, pv + 40 * static_cast<std::int64_t>(q) * st->uni->theta_step());
        for (std::uint32_t s = 1; s <= 2 * q; ++s)
            for (std::uint32_t d = 0; d <= 3; ++d) {
                auto lhs = HOmega_at(*st, s, d, 0, pv);
                auto rhs = (to_laurent(gamma(*st, s - 1), st->uni) * power_sum_laurent(*st, d, s, pv + 200) * om.pow(s)).truncated(pv);
                CHECK(lhs.prec() == pv);
                CHECK(lhs.agrees_with(rhs));
            }
    }
}

TEST_CASE("T terms") {
    auto st = make_setting(3, 2);
    // T_{s,1} = xi^{-1} H_{s-1}^{(-1)} (t - theta)^s.
    auto T = T_term(*st, 1, 1, 1, 6);
    auto expect = t_minus_theta_root(*st, 0, 6).scaled(st->K->inv(st->color(1)));
    CHECK(T.agrees_with(expect));
    CHECK_FALSE(T_term(*st, 1, 1, 1, 6, true).agrees_with(expect));
}

TEST_CASE("L series specialize to colored zeta values") {
    struct Case {
        std::uint64_t q;
        std::uint32_t r;
        const char* idx;
    };
    for (const auto& c : {Case{3, 1, "1"}, Case{3, 1, "2,1"}, Case{2, 1, "1,2"}, Case{3, 2, "2,1:g^4,g"}, Case{2, 2, "1,1:g,g"}}) {
        auto st = make_setting(c.q, c.r);
        Index idx = parse_index(c.idx);
        const std::int64_t pv = v_precision(*st, 30);
        SeriesInfo info;
        auto L = L_at(*st, idx, 0, pv, &info);
        CHECK(info.d_cutoff >= idx.depth());
        CHECK(L.prec() == pv);
        CHECK(L.agrees_with(specialized_zeta(*st, idx, pv)));
    }
}

TEST_CASE("L and L* as Tate series") {
    auto st = make_setting(3, 1);
    const std::int64_t P = 600;
    Index a = parse_index("2"), b = parse_index("1");
    auto La = L_series(*st, a, 6, P), Lb = L_series(*st, b, 6, P);
    // Depth-one stuffle of chains: L(a) L(b) = L(a,b) + L(b,a) + sum_d x_a(d) x_b(d),
    // and L*(a,b) = L(a,b) + diagonal, so L(a) L(b) = L*(a,b) + L(b,a).
    auto lhs = (La * Lb).truncated(P);
    auto rhs = (L_star_series(*st, parse_index("2,1"), 6, P) + L_series(*st, parse_index("1,2"), 6, P)).truncated(P);
    CHECK(lhs.agrees_with(rhs));
    CHECK(L_star_series(*st, a, 6, P).agrees_with(La));
}

TEST_CASE("trivialization checks") {
    struct Case {
        std::uint64_t q;
        std::uint32_t r;
        const char* idx;
    };
    for (const auto& c : {Case{3, 1, "1"}, Case{3, 1, "2,1"}, Case{2, 2, "1,1:g,g"}, Case{3, 2, "2,1:g^4,g^4"}}) {
        MotiveSpec ms;
        ms.q = c.q;
        ms.r = c.r;
        ms.index = parse_index(c.idx);
        ms.t_deg = 6;
        ms.prec = 20;
        auto td = build_triv(ms);
        auto rep = check_trivialization(td);
        INFO(c.idx << " " << rep.detail);
        CHECK(rep.ok);
        CHECK(rep.max_checked_exponent >= td.pv);
        // mu^{q^r - 1} = xi^r
        const auto& K = *td.st->K;
        for (std::size_t i = 0; i < td.mu.size(); ++i)
            CHECK(K.pow(td.mu[i], static_cast<std::int64_t>(td.st->uni->q_pow(c.r) - 1)) ==
                  K.pow(td.st->color(ms.index.colors[i]), c.r));
    }
}

TEST_CASE("the literal T variant breaks the difference equation") {
    MotiveSpec ms;
    ms.q = 3;
    ms.r = 2;
    ms.index = parse_index("2,1:g^4,g^4");
    ms.t_deg = 6;
    ms.prec = 20;
    ms.literal_t_term = true;
    auto rep = check_trivialization(build_triv(ms), false);
    CHECK_FALSE(rep.difference_equation);
}

TEST_CASE("F_64 is chosen for (1,1; g,g) over F_4") {
    auto st = motive_setting(2, 2, parse_index("1,1:g,g"));
    CHECK(st->K->size() == 64);
}

TEST_CASE("first column at theta and at theta^{q^N}") {
    MotiveSpec ms;
    ms.q = 3;
    ms.r = 2;
    ms.index = parse_index("2,1:g^4,g");
    ms.t_deg = 4;
    ms.prec = 15;
    auto td = build_triv(ms);
    const auto& st = *td.st;
    const auto& K = *st.K;
    const std::int64_t pv = td.pv;
    gf::Elem a = K.mul(td.mu[0], td.mu[1]);
    gf::Elem c = K.mul(st.color(4), st.color(1));

    auto col0 = psi_column_at(td, 0, pv);
    CHECK(col0.back().agrees_with(specialized_zeta(st, ms.index, pv).scaled(a)));
    CHECK(col0.front().agrees_with(omega_at_theta(st.uni, pv + 200).pow(3).truncated(pv)));

    const std::uint32_t N = 2 * ms.r;
    const std::int64_t qN = st.uni->q_pow(N);
    const std::int64_t pv_hi = pv * qN;
    auto colN = psi_column_at(td, N, pv_hi);
    for (std::size_t i = 0; i + 1 < colN.size(); ++i) CHECK(colN[i].is_zero());
    auto expect = laurent_qtwist(specialized_zeta(st, ms.index, pv), N).scaled(K.mul(a, K.pow(c, N)));
    CHECK(colN.back().prec() >= pv_hi);
    CHECK(colN.back().agrees_with(expect));
}

TEST_CASE("Kronecker square of zeta(1)") {
    MotiveSpec ms;
    ms.q = 3;
    ms.r = 1;
    ms.index = parse_index("1");
    ms.t_deg = 6;
    ms.prec = 20;
    auto td = kronecker_motive({ms}, {2});
    CHECK(td.Psi.size() == 4);
    auto rep = check_trivialization(td, false);
    INFO(rep.detail);
    CHECK(rep.ok);
    auto col = psi_column_at(td, 0, td.pv);
    // Omega(theta)^2 = 1 / pi^2
    auto pi = carlitz_period(td.st->uni, td.pv + 100);
    CHECK((col.front() * pi.pow(2)).agrees_with(LaurentScalar::one(td.st->uni)));
}

TEST_CASE("depth-one level-one Phi shape") {
    MotiveSpec ms;
    ms.q = 3;
    ms.index = parse_index("3");
    ms.t_deg = 8;
    ms.prec = 10;
    auto td = build_triv(ms);
    const auto& st = *td.st;
    auto tm = t_minus_theta_root(st, 0, 8).pow(3);
    CHECK(td.Phi[0][0].agrees_with(tm));
    CHECK(td.Phi[1][0].agrees_with(at_series(st, at_poly(st, 2), -1, 8) * tm));
    CHECK(td.Phi[1][1].agrees_with(TateSeries::constant(8, LaurentScalar::one(st.uni))));
    CHECK(td.Phi[0][1].is_zero());
}

TEST_CASE("L* against a brute-force double sum") {
    auto st = make_setting(2, 1);
    const std::int64_t P = 300;
    SeriesInfo info;
    auto Ls = L_star_series(*st, parse_index("1,1"), 5, P, &info);
    auto x = [&](std::uint32_t d) { return tate_twist(omega(st->uni, 5, P), d).truncated(P); };
    TateSeries brute(st->uni, 5);
    for (std::uint32_t d1 = 0; d1 < info.d_cutoff + 2; ++d1)
        for (std::uint32_t d2 = 0; d2 <= d1; ++d2) brute += x(d1) * x(d2);
    CHECK(Ls.agrees_with(brute.truncated(P)));
}

TEST_CASE("twists and T-term color dependence") {
    auto st = make_setting(3, 2);
    auto om = omega(st->uni, 6, 2000);
    CHECK(tate_twist(tate_twist(om, 2), -2).agrees_with(om));
    auto t1 = T_term(*st, 2, 2, 0, 6), tg = T_term(*st, 2, 2, 3, 6);
    CHECK(tg.agrees_with(t1.scaled(st->K->inv(st->K->pow(st->color(3), 2)))));
    CHECK_THROWS_AS(tate_twist(TateSeries::constant(6, LaurentScalar::monomial(st->uni, st->K->one(), 1)), -1), TwistError);
}

TEST_CASE("Psi entries decay in t") {
    MotiveSpec ms;
    ms.q = 3;
    ms.index = parse_index("2,1");
    ms.t_deg = 8;
    ms.prec = 30;
    auto td = build_triv(ms);
    for (const auto& row : td.Psi)
        for (const auto& e : row) {
            const std::int64_t top = e.coeff(8).valuation_bound();
            CHECK(top >= e.coeff(0).valuation_bound());
            CHECK(top >= e.coeff(1).valuation_bound());
            if (!e.coeff(0).is_zero()) CHECK(top > e.coeff(0).valuation());
        }
}
