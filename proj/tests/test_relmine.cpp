#include "doctest.h"

#include "cmzv/relmine.hpp"

using namespace cmzv;

namespace {

std::size_t find_monomial(const MonomialBasis& b, const std::string& text) {
    for (std::size_t i = 0; i < b.monomials.size(); ++i)
        if (format_monomial(b.monomials[i]) == text) return i;
    FAIL("missing monomial " << text);
    return 0;
}

}  // namespace

TEST_CASE("monomial enumeration") {
    auto st = make_setting(3, 1);
    auto b1 = enumerate_monomials(*st, 1, 3, false);
    REQUIRE(b1.monomials.size() == 1);
    CHECK(format_monomial(b1.monomials[0]) == "zeta(1)");
    auto b2 = enumerate_monomials(*st, 2, 3, false);
    CHECK(b2.monomials.size() == 3);
    find_monomial(b2, "zeta(2)");
    find_monomial(b2, "zeta(1,1)");
    find_monomial(b2, "zeta(1)^2");
    for (const auto& m : enumerate_monomials(*st, 4, 2).monomials) CHECK(m.weight() == 4);
    // Colors multiply the index count by the group order per entry.
    auto st2 = make_setting(3, 2);
    CHECK(enumerate_indices(*st2, 2, 2).size() == 8 + 8 + 64);
    CHECK(enumerate_monomials(*st2, 1, 1).monomials.size() == 8);
    CHECK_THROWS_AS(enumerate_monomials(*st2, 4, 3, true, 100), std::length_error);
}

TEST_CASE("q = 2, weight 2: zeta(1)^2 = zeta(2)") {
    auto st = make_setting(2, 1);
    auto b = enumerate_monomials(*st, 2, 2, false);
    auto rep = mine_relations(*st, b.monomials, 40);
    CHECK(rep.separated);
    CHECK(rep.unconfirmed == 0);
    std::vector<std::uint32_t> v(b.monomials.size(), 0);
    v[find_monomial(b, "zeta(1)^2")] = 1;
    v[find_monomial(b, "zeta(2)")] = 1;
    CHECK(in_span(rep.relations, v, 2));
}

TEST_CASE("q = 3, weight 2 stuffle relation") {
    auto st = make_setting(3, 1);
    auto b = enumerate_monomials(*st, 2, 2, false);
    auto rep = mine_relations(*st, b.monomials, 40);
    std::vector<std::uint32_t> v(b.monomials.size(), 0);
    v[find_monomial(b, "zeta(1)^2")] = 1;
    v[find_monomial(b, "zeta(2)")] = 2;
    v[find_monomial(b, "zeta(1,1)")] = 1;  // -2 = 1 mod 3
    CHECK(in_span(rep.relations, v, 3));
    CHECK(rep.relations.size() == 1);
    auto implied = stuffle_relations(*st, b.monomials);
    REQUIRE(implied.size() == 1);
    CHECK(implied[0] == v);
}

TEST_CASE("every stuffle-implied relation is mined") {
    for (std::uint64_t q : {2, 3})
        for (std::uint32_t w = 1; w <= 3; ++w) {
            auto st = make_setting(q, 1);
            auto b = enumerate_monomials(*st, w, w, false);
            auto rep = mine_relations(*st, b.monomials, 30);
            CHECK(rep.unconfirmed == 0);
            for (const auto& v : stuffle_relations(*st, b.monomials)) CHECK(in_span(rep.relations, v, st->p));
        }
}

TEST_CASE("mining is deterministic and reports zero candidates for an independent set") {
    auto st = make_setting(3, 1);
    auto b = enumerate_monomials(*st, 3, 3, false);
    auto r1 = mine_relations(*st, b.monomials, 30), r2 = mine_relations(*st, b.monomials, 30);
    REQUIRE(r1.relations.size() == r2.relations.size());
    for (std::size_t i = 0; i < r1.relations.size(); ++i) CHECK(r1.relations[i].coeffs == r2.relations[i].coeffs);
    auto single = mine_relations(*st, {b.monomials[0]}, 30);
    CHECK(single.relations.empty());
}

TEST_CASE("cross-weight scans") {
    auto st = make_setting(3, 1);
    auto s12 = cross_weight_scan(*st, 1, 2, 2, 30, false);
    CHECK(s12.ok());
    CHECK(s12.relations == 1);
    auto s23 = cross_weight_scan(*st, 2, 3, 3, 30, false);
    CHECK(s23.ok());
    CHECK_THROWS(cross_weight_scan(*st, 2, 2, 2, 30, false));
}
