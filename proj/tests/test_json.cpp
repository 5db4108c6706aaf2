#include "doctest.h"

#include "cmzv/json_io.hpp"

using namespace cmzv;
using io::json;

TEST_CASE("laurent scalar round trip") {
    for (auto [q, r] : {std::pair{2u, 1u}, {3u, 2u}, {4u, 1u}}) {
        auto st = make_setting(q, r);
        for (const auto& idx : {parse_index("1"), parse_index("2,1:g,1"), parse_index("3:g^2")}) {
            if (idx.colors[0] != 0 && r == 1 && q == 2) continue;
            auto v = cmzv::cmzv(*st, idx, 15).value;
            auto j = io::to_json(v);
            auto back = io::laurent_from_json(j);
            CHECK(back == v);
            CHECK(io::laurent_from_json(json::parse(j.dump()), st->uni) == v);
            CHECK(io::to_json(back).dump() == j.dump());
        }
    }
}

TEST_CASE("laurent scalar json shape and text") {
    auto st = make_setting(3, 1);
    auto one = LaurentScalar::one(st->uni);
    auto j = io::to_json(one);
    CHECK(j["terms"] == json::parse("[[0,[1]]]"));
    CHECK(j["prec"].is_null());
    CHECK(io::to_text(one) == "deg_theta = 0: 1");
    auto th = LaurentScalar::theta(st->uni);
    CHECK(io::to_text(th) == "deg_theta = 1: 1*theta^1");
    auto z = cmzv::cmzv(*st, parse_index("1"), 5).value;
    auto text = io::to_text(z);
    CHECK(text.rfind("deg_theta = 0: 1 +", 0) == 0);
    CHECK(text.find("O(theta^-6)") != std::string::npos);
}

TEST_CASE("malformed scalars are rejected") {
    auto st = make_setting(3, 1);
    auto j = io::to_json(LaurentScalar::one(st->uni));
    auto bad = j;
    bad["terms"] = json::parse("[[0,[5]]]");
    CHECK_THROWS_AS(io::laurent_from_json(bad), std::invalid_argument);
    bad = j;
    bad["depth"] = 2;
    CHECK_THROWS_AS(io::laurent_from_json(bad, st->uni), std::invalid_argument);
    bad = j;
    bad.erase("prec");
    CHECK_THROWS(io::laurent_from_json(bad));
}

TEST_CASE("relation round trip") {
    auto st = make_setting(3, 2);
    auto a = word_from_index(*st, parse_index("1,2:g,g^3"));
    auto b = word_from_index(*st, parse_index("2:g^5"));
    for (auto rel : {zeta_relation(*st, a, b), same_degree_relation(*st, a, b)}) {
        auto j = io::to_json(rel);
        auto back = io::relation_from_json(*st, json::parse(j.dump()));
        CHECK(back.kind == rel.kind);
        CHECK(back.a == rel.a);
        CHECK(back.b == rel.b);
        CHECK(back.rhs == rel.rhs);
    }
    auto q2 = make_setting(2, 1);
    auto rel = zeta_relation(*q2, word_from_index(*q2, parse_index("1")), word_from_index(*q2, parse_index("1")));
    CHECK(io::to_text(rel) == "zeta(1:1) * zeta(1:1) = zeta(2:1)");
}

TEST_CASE("monomials and candidates round trip") {
    auto st = make_setting(3, 2);
    for (const auto& m : enumerate_monomials(*st, 2, 2).monomials) CHECK(io::parse_monomial(format_monomial(m)) == m);
    CHECK(io::parse_monomial("zeta(1)^2 * zeta(2,1:g,1)").factors.size() == 2);
    CHECK_THROWS(io::parse_monomial("zeta(1"));
    CHECK_THROWS(io::parse_monomial("zeta(1)^0"));

    auto st3 = make_setting(3, 1);
    auto b = enumerate_monomials(*st3, 2, 2, false);
    auto rep = mine_relations(*st3, b.monomials, 20);
    REQUIRE(rep.relations.size() == 1);
    auto j = io::to_json(rep.relations[0], b.monomials);
    auto back = io::candidate_from_json(json::parse(j.dump()));
    CHECK(back.coeffs == rep.relations[0].coeffs);
    CHECK(back.confirmed);
    CHECK(back.confirmation_prec == 40);
    CHECK(j["support"].size() == 3);
}

TEST_CASE("tate series and AT polynomial json") {
    auto st = make_setting(2, 1);
    auto om = omega(st->uni, 3, 10);
    auto j = io::to_json(om);
    CHECK(j["coeffs"].size() == 4);
    CHECK(io::laurent_from_json(j["coeffs"][1], st->uni) == om.coeff(1));
    auto h = io::to_json(at_poly(*st, 2));
    CHECK(h["t_degree"].get<int>() >= 0);
}
