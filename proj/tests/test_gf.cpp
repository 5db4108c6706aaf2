#include "doctest.h"

#include <cstdlib>
#include <random>

#include "cmzv/gf.hpp"

using namespace cmzv::gf;

namespace {

// Naive polynomial arithmetic over F_p modulo the field modulus.
std::vector<std::uint32_t> naive_mul(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b, const FieldSpec& s) {
    a.resize(s.e, 0);
    b.resize(s.e, 0);
    std::vector<std::uint64_t> prod(2 * s.e, 0);
    for (std::uint32_t i = 0; i < s.e; ++i)
        for (std::uint32_t j = 0; j < s.e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % s.p;
    for (std::uint32_t k = 2 * s.e - 1; k >= s.e; --k) {
        std::uint64_t c = prod[k];
        if (!c) continue;
        for (std::uint32_t j = 0; j <= s.e; ++j) prod[k - s.e + j] = (prod[k - s.e + j] + (s.p - c) * s.modulus[j]) % s.p;
    }
    std::vector<std::uint32_t> out(s.e);
    for (std::uint32_t i = 0; i < s.e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

std::vector<std::uint32_t> padded(std::vector<std::uint32_t> v, std::uint32_t e) {
    v.resize(e, 0);
    return v;
}

}  // namespace

TEST_CASE("moduli are the least irreducibles") {
    CHECK(build_field(2, 1).modulus == std::vector<std::uint32_t>{0, 1});
    CHECK(build_field(2, 2).modulus == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(build_field(2, 3).modulus == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(build_field(3, 2).modulus == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(build_field(2, 4).modulus == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    CHECK(is_irreducible({1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible({1, 0, 1}, 2));
}

TEST_CASE("canonical generator of F_9 is x+1") {
    auto g = canonical_generator(build_field(3, 2));
    CHECK(g.field->packed(g.value) == 4);
    CHECK(g.field->order_of(g.value) == 8);
}

TEST_CASE("prime power factoring") {
    CHECK(factor_prime_power(4).p == 2);
    CHECK(factor_prime_power(4).m == 2);
    CHECK(factor_prime_power(27).m == 3);
    CHECK_THROWS_AS(factor_prime_power(6), FieldError);
}

TEST_CASE("Zech arithmetic agrees with naive polynomial arithmetic") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 4}, {3, 1}, {3, 3}, {5, 2}, {2, 6}}) {
        auto F = GaloisField::make(p, e);
        std::mt19937 rng(p * 100 + e);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(F->size() - 1));
        for (int it = 0; it < 300; ++it) {
            Elem a = F->from_packed(pick(rng)), b = F->from_packed(pick(rng));
            auto ca = padded(F->coeffs(a), e), cb = padded(F->coeffs(b), e);
            std::vector<std::uint32_t> sum(e);
            for (std::uint32_t i = 0; i < e; ++i) sum[i] = (ca[i] + cb[i]) % p;
            CHECK(padded(F->coeffs(F->add(a, b)), e) == sum);
            CHECK(padded(F->coeffs(F->mul(a, b)), e) == naive_mul(ca, cb, F->spec()));
            CHECK(F->add(a, F->neg(a)).is_zero());
            if (!a.is_zero()) CHECK(F->mul(a, F->inv(a)) == F->one());
            CHECK(F->frobenius(a, 1) == F->pow(a, p));
            CHECK(F->frobenius(F->frobenius(a, -1), 1) == a);
        }
    }
}

TEST_CASE("subfield membership and from_int") {
    auto F = GaloisField::make(3, 4);
    CHECK(F->from_int(-1) == F->neg(F->one()));
    CHECK(F->in_subfield(F->from_int(2), 1));
    std::size_t count = 0;
    for (std::uint32_t v = 0; v < F->size(); ++v)
        if (F->in_subfield(F->from_packed(v), 2)) ++count;
    CHECK(count == 9);
}

TEST_CASE("embeddings are ring homomorphisms") {
    for (auto [p, a, b] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{2, 2, 6}, {3, 2, 4}, {2, 3, 6}, {2, 1, 4}}) {
        auto S = GaloisField::make(p, a), T = GaloisField::make(p, b);
        Embedding emb(S, T);
        for (std::uint32_t x = 0; x < S->size(); ++x)
            for (std::uint32_t y = 0; y < S->size(); ++y) {
                Elem ex = S->from_packed(x), ey = S->from_packed(y);
                CHECK(emb.apply(S->add(ex, ey)) == T->add(emb.apply(ex), emb.apply(ey)));
                CHECK(emb.apply(S->mul(ex, ey)) == T->mul(emb.apply(ex), emb.apply(ey)));
            }
        CHECK(emb.apply(S->one()) == T->one());
    }
}

TEST_CASE("mu roots") {
    auto F4 = GaloisField::make(2, 2);
    GFElem g{F4, F4->generator()};
    auto sol = solve_mu(g, 2, 2);
    CHECK(sol.ext_degree == 3);
    CHECK(sol.home.e == 6);
    // mu^{q^r - 1} equals the image of xi^r.
    Embedding emb(F4, sol.mu.field);
    CHECK(sol.mu.pow(3) == GFElem{sol.mu.field, emb.apply(F4->pow(g.value, 2))});

    auto F3 = GaloisField::make(3, 1);
    auto one = solve_mu(GFElem{F3, F3->one()}, 3, 1);
    CHECK(one.ext_degree == 1);
    CHECK(one.mu.pow(2) == GFElem{one.mu.field, one.mu.field->one()});
}

TEST_CASE("field size guard") {
    ::setenv("CMZV_MAX_FIELD", "64", 1);
    CHECK_THROWS_AS(GaloisField::make(2, 7), FieldError);
    CHECK_NOTHROW(GaloisField::make(2, 6));
    ::unsetenv("CMZV_MAX_FIELD");
}
