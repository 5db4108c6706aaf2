#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmzv/json_io.hpp"

using namespace cmzv;
using io::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CMZV_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<json> lines(const std::string& s) {
    std::vector<json> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

}  // namespace

TEST_CASE("zeta emits a parseable scalar with its certificate") {
    auto r = run("zeta --q 3 --r 1 --index 2 --colors g^0 --prec 40");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    auto st = make_setting(3, 1);
    auto v = io::laurent_from_json(j);
    CHECK(v == cmzv::cmzv(*st, parse_index("2"), 40).value);
    CHECK(j["leading_degree"] == 0);
    CHECK(j.contains("d_cutoff"));
    CHECK(j["meta"]["options"]["prec"] == "40");
    // Defaults are logged too.
    auto d = json::parse(run("zeta --index 1").out);
    CHECK(d["meta"]["options"]["q"] == "3");
    CHECK(d["meta"]["options"]["prec"] == "40");
}

TEST_CASE("zeta text mode renders the theta expansion") {
    auto r = run("zeta --q 3 --index 1,1 --prec 8 --format text");
    REQUIRE(r.code == 0);
    auto st = make_setting(3, 1);
    auto deg = certified_degree(*st, parse_index("1,1"));
    CHECK(r.out.find("deg_theta = " + std::to_string(deg) + ":") != std::string::npos);
}

TEST_CASE("shuffle in characteristic 2 and the relation database") {
    auto r = run("shuffle --a \"1:g^0\" --b \"1:g^0\" --q 2");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    auto st = make_setting(2, 1);
    auto rel = io::relation_from_json(*st, j);
    REQUIRE(rel.rhs.size() == 1);
    CHECK(format_index(index_from_word(rel.rhs.begin()->first)) == "2:1");
    CHECK(rel.rhs.begin()->second == 1);
    CHECK(j["verification"]["status"] == "ok");

    const std::string db = "cli_test_relations.jsonl";
    std::remove(db.c_str());
    REQUIRE(run("shuffle --a \"1,2:g^0,g^3\" --b \"1:g^1\" --r 2 --db " + db).code == 0);
    REQUIRE(run("shuffle --a \"2:g\" --b \"1:g^2\" --r 2 --kind same-degree --db " + db).code == 0);
    std::ifstream in(db);
    std::stringstream ss;
    ss << in.rdbuf();
    auto rows = lines(ss.str());
    REQUIRE(rows.size() == 2);
    auto st2 = make_setting(3, 2);
    for (const auto& row : rows) {
        auto back = io::relation_from_json(*st2, row);
        auto again = io::to_json(back);
        for (const char* key : {"kind", "a", "b", "rhs"}) CHECK(again[key] == row[key]);
        CHECK(verify_relation(*st2, back, 0, 2).ok());
    }
    std::remove(db.c_str());
}

TEST_CASE("verify-triv exit codes") {
    auto ok = run("verify-triv --q 3 --r 1 --index 2 --tdeg 6 --prec 20");
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["status"] == "ok");
    auto lit = run("verify-triv --q 3 --r 2 --index 2,1 --colors g^4,g^4 --tdeg 6 --prec 20 --t-term-literal");
    CHECK(lit.code == 1);
    CHECK(json::parse(lit.out)["status"] == "fail");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("zeta").code == 2);
    CHECK(run("zeta --index 1,x").code == 2);
    CHECK(run("zeta --index 1 --colors h").code == 2);
    CHECK(run("zeta --q 6 --index 1").code == 2);
    CHECK(run("zeta --index 1 --prec 0").code == 2);
    CHECK(run("zeta --index 1 --format xml").code == 2);
    CHECK(run("scan --w1 2 --w2 2").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("mine emits JSON lines that parse back") {
    auto r = run("mine --q 3 --r 1 --weight 2 --depth-max 2 --prec 30");
    REQUIRE(r.code == 0);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["type"] == "basis");
    std::vector<Monomial> basis;
    for (const auto& m : rows[0]["monomials"]) basis.push_back(io::parse_monomial(m.get<std::string>()));
    CHECK(rows[1]["type"] == "relation");
    auto c = io::candidate_from_json(rows[1]);
    CHECK(c.confirmed);
    CHECK(c.confirmation_prec == 60);
    CHECK(io::to_json(c, basis)["support"] == rows[1]["support"]);
    CHECK(rows[1]["stuffle_implied"] == true);
    CHECK(rows[2]["type"] == "summary");
    CHECK(rows[2]["stuffle_missing"] == 0);
}

TEST_CASE("remaining commands") {
    auto at = run("at-poly --q 3 --n 4");
    CHECK(at.code == 0);
    CHECK(json::parse(at.out)["diagonal_is_gamma"] == true);
    auto om = run("omega --q 2 --r 1 --tdeg 3 --prec 10");
    CHECK(om.code == 0);
    auto j = json::parse(om.out);
    CHECK(j["difference_equation"] == true);
    auto st = make_setting(2, 1);
    CHECK(io::laurent_from_json(j["coeffs"][0], st->uni) == omega(st->uni, 3, v_precision(*st, 10)).coeff(0));
    auto ps = run("powersum --q 3 --d 2 --index 1 --prec 10");
    CHECK(ps.code == 0);
    CHECK(json::parse(ps.out)["exact"]["degree"] == -12);
    auto sc = run("scan --q 2 --w1 1 --w2 2 --prec 30");
    CHECK(sc.code == 0);
    CHECK(json::parse(sc.out)["cross_weight_final"] == 0);
}
