#include "doctest.h"

#include <random>

#include "cmzv/ringA.hpp"

using namespace cmzv;

namespace {

PolyA random_poly(const Setting& st, std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<std::uint32_t> cf(0, static_cast<std::uint32_t>(st.K->size() - 1));
    std::vector<gf::Elem> c(deg(rng) + 1);
    for (auto& x : c) x = st.K->from_packed(cf(rng));
    return PolyA(st.K, c);
}

}  // namespace

TEST_CASE("monic enumeration") {
    auto st = make_setting(3, 1);
    auto m0 = monics(*st, 0);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0] == PolyA::one(st->K));
    auto m1 = monics(*st, 1);
    REQUIRE(m1.size() == 3);
    PolyA th = PolyA::theta(st->K);
    CHECK(m1[0] == th);
    CHECK(m1[1] == th + PolyA::constant(st->K, st->K->from_int(1)));
    CHECK(m1[2] == th + PolyA::constant(st->K, st->K->from_int(2)));
    auto st2 = make_setting(2, 1);
    CHECK(monics(*st2, 3).size() == 8);
    auto st4 = make_setting(4, 2);
    auto m2 = monics(*st4, 2);
    CHECK(m2.size() == 16);
    for (const auto& a : m2) {
        CHECK(a.is_monic());
        for (auto c : a.coeffs()) CHECK(st4->K->in_subfield(c, 2));
    }
}

TEST_CASE("gamma values") {
    for (std::uint64_t q : {2, 3, 4}) {
        auto st = make_setting(q, 1);
        PolyA th = PolyA::theta(st->K);
        CHECK(gamma(*st, 0) == PolyA::one(st->K));
        CHECK(gamma(*st, q) == th.qpow(q, 1) - th);
        CHECK(gamma(*st, q + 1) == th.qpow(q, 1) - th);
        // Brute-force product over digits and the degree formula.
        for (std::uint64_t n = 0; n < q * q * q; ++n) {
            PolyA g = gamma(*st, n);
            std::int64_t deg = 0;
            PolyA direct = PolyA::one(st->K);
            std::uint64_t qi = 1, nn = n;
            for (std::uint32_t i = 0; nn; ++i, nn /= q, qi *= q) {
                std::uint64_t ni = nn % q;
                std::uint64_t qj = 1;
                for (std::uint32_t j = 0; j < i; ++j, qj *= q) {
                    PolyA f = PolyA::monomial(st->K, st->K->one(), qi) - PolyA::monomial(st->K, st->K->one(), qj);
                    for (std::uint64_t k = 0; k < ni; ++k) direct *= f;
                }
                deg += static_cast<std::int64_t>(ni * i * qi);
            }
            CHECK(g == direct);
            CHECK(g.degree() == deg);
            CHECK(g.is_monic());
        }
    }
}

TEST_CASE("fractions are canonical") {
    auto st = make_setting(3, 1);
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        PolyA a = random_poly(*st, rng, 4), b = random_poly(*st, rng, 4), c = random_poly(*st, rng, 3);
        if (b.is_zero() || c.is_zero()) continue;
        RatFuncExt x(a, b), y(a * c, b * c);
        CHECK(x == y);
        CHECK(x.den().is_monic());
        CHECK((x - y).is_zero());
        if (!x.is_zero()) CHECK(x * x.inv() == RatFuncExt::one(st->K));
    }
}

TEST_CASE("Laurent embedding is a ring homomorphism") {
    auto st = make_setting(3, 2);
    const auto& spec = st->uni;
    CHECK(to_laurent(PolyA::theta(st->K), spec) == LaurentScalar::theta(spec));
    std::mt19937 rng(5);
    const std::int64_t P = 300;
    for (int it = 0; it < 20; ++it) {
        PolyA a = random_poly(*st, rng, 3), b = random_poly(*st, rng, 3), c = random_poly(*st, rng, 3),
              d = random_poly(*st, rng, 3);
        if (b.is_zero() || d.is_zero()) continue;
        RatFuncExt x(a, b), y(c, d);
        auto lx = to_laurent(x, spec, P), ly = to_laurent(y, spec, P);
        CHECK(to_laurent(x + y, spec, P).agrees_with(lx + ly));
        CHECK(to_laurent(x * y, spec, P).agrees_with(lx * ly));
        // Stable under raising the precision.
        CHECK(to_laurent(x, spec, 2 * P).agrees_with(lx));
        if (!x.is_zero()) CHECK(theta_degree(lx) == x.degree());
    }
}

TEST_CASE("1/(theta - theta^3) by long division") {
    auto st = make_setting(3, 1);
    const auto& K = *st->K;
    PolyA th = PolyA::theta(st->K);
    RatFuncExt f(PolyA::one(st->K), th - th.qpow(3, 1));
    auto l = to_laurent(f, st->uni, 120);
    // -1/theta^3 * 1/(1 - theta^{-2}) = -(theta^{-3} + theta^{-5} + ...), theta^{-1} = -v^6.
    LaurentScalar oracle(st->uni, kExact);
    for (int k = 3; k <= 21; k += 2) {
        gf::Elem sign = (k % 2) ? K.one() : K.neg(K.one());  // (-1)^k from theta^{-1} = -v^6, times -1
        oracle += LaurentScalar::monomial(st->uni, sign, 6 * k);
    }
    CHECK(l.agrees_with(oracle.truncated(120)));
    CHECK(theta_degree(l) == -3);
}
