// cmzv: command-line front end. Exit codes: 0 success, 1 verification or
// computation failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cmzv/json_io.hpp"

using namespace cmzv;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every option of the subcommand with its effective value, defaults included.
json metadata(const CLI::App& sub, const std::string& format) {
    json opts = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
        const std::string key = opt->get_lnames()[0];
        if (opt->get_expected_min() == 0) {
            opts[key] = opt->count() > 0;
        } else if (opt->count() > 0) {
            opts[key] = opt->results().size() == 1 ? json(opt->results()[0]) : json(opt->results());
        } else {
            opts[key] = opt->get_default_str().empty() ? json(nullptr) : json(opt->get_default_str());
        }
    }
    return json{{"command", sub.get_name()}, {"version", kVersion}, {"format", format}, {"options", std::move(opts)}};
}

struct Output {
    std::ostream* os = &std::cout;
    std::ofstream file;
    bool text = false;

    void line(const json& j) { *os << j.dump() << '\n'; }
    void line(const std::string& s) { *os << s << '\n'; }
};

void check_common(std::uint64_t q, std::uint32_t r, std::int64_t prec) {
    try {
        gf::factor_prime_power(q);
    } catch (const std::exception&) {
        throw UsageError("q must be a prime power, got " + std::to_string(q));
    }
    if (r == 0) throw UsageError("r must be positive");
    if (prec <= 0) throw UsageError("prec must be positive");
}

Index read_index(const std::string& index, const std::string& colors) {
    try {
        return parse_index(index, colors);
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed index: ") + e.what());
    }
}

Word read_word(const Setting& st, const std::string& text) { return word_from_index(st, read_index(text, "")); }

struct Common {
    std::uint64_t q = 3;
    std::uint32_t r = 1;
    std::int64_t prec = 40;
};

void add_common(CLI::App* sub, Common& c, std::int64_t default_prec) {
    c.prec = default_prec;
    sub->add_option("--q", c.q, "size of the constant field F_q");
    sub->add_option("--r", c.r, "colors live in F_{q^r}");
    sub->add_option("--prec", c.prec, "precision in theta-digits");
}

std::string candidate_text(const RelationCandidate& c, const std::vector<Monomial>& basis) {
    std::string out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!c.coeffs[i]) continue;
        if (!out.empty()) out += " + ";
        if (c.coeffs[i] != 1) out += std::to_string(c.coeffs[i]) + "*";
        out += format_monomial(basis[i]);
    }
    return out + " = 0  [" + (c.confirmed ? "confirmed" : "unconfirmed") + " at " + std::to_string(c.confirmation_prec) +
           "]";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored multizeta values over F_q[theta]: values, relations and t-motive checks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::string format = "json";
    std::string output;
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("-o,--output", output, "append to a file instead of writing to stdout");
    app.fallthrough();

    // zeta
    Common zc;
    std::string z_index, z_colors;
    auto* zeta = app.add_subcommand("zeta", "colored multizeta value as a Laurent series in 1/theta");
    add_common(zeta, zc, 40);
    zeta->add_option("--index", z_index, "s1,s2,... or s1,s2:g^a,g^b")->required();
    zeta->add_option("--colors", z_colors, "g^a,g^b,... (default all 1)");

    // powersum
    Common pc;
    std::uint32_t p_d = 1;
    std::string p_index, p_colors;
    auto* powersum = app.add_subcommand("powersum", "power sum S_d over monic polynomials of degree d");
    add_common(powersum, pc, 20);
    powersum->add_option("--d", p_d, "degree of the summed monics");
    powersum->add_option("--index", p_index, "index; depth > 1 gives the nested sum")->required();
    powersum->add_option("--colors", p_colors, "colors of the index");

    // shuffle
    Common sc;
    std::string s_a, s_b, s_kind = "zeta", s_db;
    std::uint32_t s_dmax = 3;
    auto* shuffle = app.add_subcommand("shuffle", "sum-shuffle product of two indices, with verification");
    add_common(shuffle, sc, 30);
    shuffle->add_option("--a", s_a, "first index, s:colors")->required();
    shuffle->add_option("--b", s_b, "second index, s:colors")->required();
    shuffle->add_option("--kind", s_kind, "zeta or same-degree")->check(CLI::IsMember({"zeta", "same-degree"}));
    shuffle->add_option("--d-max", s_dmax, "exact check for d <= d-max");
    shuffle->add_option("--db", s_db, "append the verified relation as a JSON line");

    // verify-triv
    Common vc;
    std::string v_index, v_colors;
    std::uint32_t v_tdeg = 10;
    bool v_literal = false, v_no_upsilon = false;
    std::uint32_t v_power = 1;
    auto* verify = app.add_subcommand("verify-triv", "check the rigid analytic trivialization of the t-motive");
    add_common(verify, vc, 60);
    verify->add_option("--index", v_index, "index of the motive")->required();
    verify->add_option("--colors", v_colors, "colors of the index");
    verify->add_option("--tdeg", v_tdeg, "t-adic truncation degree");
    verify->add_flag("--t-term-literal", v_literal, "run the T product through h = j");
    verify->add_flag("--no-upsilon", v_no_upsilon, "skip the inverse and closed-form checks");
    verify->add_option("--power", v_power, "Kronecker power of the motive")->check(CLI::Range(1u, 4u));

    // at-poly
    std::uint64_t a_q = 3;
    std::uint32_t a_n = 1;
    auto* atpoly = app.add_subcommand("at-poly", "Anderson-Thakur polynomial H_n");
    atpoly->add_option("--q", a_q, "size of the constant field F_q");
    atpoly->add_option("--n", a_n, "subscript n");

    // omega
    Common oc;
    std::uint32_t o_tdeg = 6;
    auto* omg = app.add_subcommand("omega", "Anderson-Thakur Omega as a t-series");
    add_common(omg, oc, 20);
    omg->add_option("--tdeg", o_tdeg, "t-adic truncation degree");

    // mine
    Common mc;
    std::uint32_t m_weight = 2, m_depth = 3;
    std::size_t m_max = 4000;
    bool m_colored = false;
    auto* mine = app.add_subcommand("mine", "relations among monomials of a fixed weight (JSON lines)");
    add_common(mine, mc, 60);
    mine->add_option("--weight", m_weight, "total weight");
    mine->add_option("--depth-max", m_depth, "largest depth of a factor");
    mine->add_flag("--colored", m_colored, "run colors over F_{q^r}^x instead of 1");
    mine->add_option("--max-basis", m_max, "refuse larger bases");

    // scan
    Common xc;
    std::uint32_t x_w1 = 1, x_w2 = 2, x_depth = 3;
    bool x_colored = false;
    auto* scan = app.add_subcommand("scan", "look for relations mixing two weights");
    add_common(scan, xc, 60);
    scan->add_option("--w1", x_w1, "first weight");
    scan->add_option("--w2", x_w2, "second weight");
    scan->add_option("--depth-max", x_depth, "largest depth of a factor");
    scan->add_flag("--colored", x_colored, "run colors over F_{q^r}^x instead of 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    Output out;
    out.text = format == "text";
    if (!output.empty()) {
        out.file.open(output, std::ios::app);
        if (!out.file) {
            std::cerr << "cannot open " << output << '\n';
            return 2;
        }
        out.os = &out.file;
    }

    try {
        if (zeta->parsed()) {
            check_common(zc.q, zc.r, zc.prec);
            auto st = make_setting(zc.q, zc.r);
            auto idx = read_index(z_index, z_colors);
            auto val = cmzv::cmzv(*st, idx, zc.prec);
            const bool certified = !val.value.is_zero() && theta_degree(val.value) == val.leading_degree;
            if (out.text) {
                out.line("zeta(" + format_index(idx) + ") = " + io::to_text(val.value));
            } else {
                json j = io::to_json(val.value);
                j["leading_degree"] = val.leading_degree;
                j["d_cutoff"] = val.d_cutoff;
                j["certified"] = certified;
                j["meta"] = metadata(*zeta, format);
                out.line(j);
            }
            return certified ? 0 : 1;
        }

        if (powersum->parsed()) {
            check_common(pc.q, pc.r, pc.prec);
            auto st = make_setting(pc.q, pc.r);
            auto idx = read_index(p_index, p_colors);
            auto exact = nested_power_sum(*st, p_d, idx);
            auto lau = to_laurent(exact, st->uni, v_precision(*st, pc.prec));
            if (out.text) {
                out.line("S_" + std::to_string(p_d) + "(" + format_index(idx) + ") = " + io::to_text(lau));
            } else {
                out.line(json{{"exact", io::to_json(*st, exact)}, {"value", io::to_json(lau)}, {"meta", metadata(*powersum, format)}});
            }
            return 0;
        }

        if (shuffle->parsed()) {
            check_common(sc.q, sc.r, sc.prec);
            auto st = make_setting(sc.q, sc.r);
            auto a = read_word(*st, s_a);
            auto b = read_word(*st, s_b);
            auto rel = s_kind == "zeta" ? zeta_relation(*st, a, b) : same_degree_relation(*st, a, b);
            auto inv = check_invariants(*st, rel);
            auto ver = verify_relation(*st, rel, sc.prec, s_dmax);
            const bool ok = inv.ok() && ver.ok();
            json j = io::to_json(rel);
            j["verification"] = {{"status", ok ? "ok" : "fail"},
                                 {"invariants", {{"weight", inv.weight}, {"color", inv.color}, {"depth", inv.depth}}},
                                 {"exact_ok", ver.exact_ok},
                                 {"exact_checked_d", ver.exact_checked},
                                 {"failing_d", ver.failing_d ? json(*ver.failing_d) : json(nullptr)},
                                 {"numeric_checked", ver.numeric_checked},
                                 {"numeric_ok", ver.numeric_ok},
                                 {"failing_exponent", ver.failing_exponent ? json(*ver.failing_exponent) : json(nullptr)}};
            j["meta"] = metadata(*shuffle, format);
            if (out.text)
                out.line(io::to_text(rel) + (ok ? "  [verified]" : "  [FAILED]"));
            else
                out.line(j);
            if (!s_db.empty()) {
                std::ofstream db(s_db, std::ios::app);
                if (!db) throw UsageError("cannot open " + s_db);
                db << j.dump() << '\n';
            }
            return ok ? 0 : 1;
        }

        if (verify->parsed()) {
            check_common(vc.q, vc.r, vc.prec);
            if (v_tdeg == 0) throw UsageError("tdeg must be positive");
            MotiveSpec ms;
            ms.q = vc.q;
            ms.r = vc.r;
            ms.index = read_index(v_index, v_colors);
            ms.t_deg = v_tdeg;
            ms.prec = vc.prec;
            ms.literal_t_term = v_literal;
            TrivData td = v_power == 1 ? build_triv(ms) : kronecker_motive({ms}, {v_power});
            auto rep = check_trivialization(td, !v_no_upsilon);
            if (out.text) {
                out.line(std::string(rep.ok ? "ok" : "fail") + ": " + std::to_string(rep.entries_checked) +
                         " entries through v^" + std::to_string(rep.max_checked_exponent) +
                         (rep.detail.empty() ? "" : " (" + rep.detail + ")"));
            } else {
                json j = io::to_json(rep);
                j["field_degree"] = td.st->K->degree();
                j["meta"] = metadata(*verify, format);
                out.line(j);
            }
            return rep.ok ? 0 : 1;
        }

        if (atpoly->parsed()) {
            check_common(a_q, 1, 1);
            auto st = make_setting(a_q, 1);
            auto h = at_poly(*st, a_n);
            const bool ok = h.diagonal() == gamma(*st, a_n);
            json j = io::to_json(h);
            j["n"] = a_n;
            j["diagonal_is_gamma"] = ok;
            j["meta"] = metadata(*atpoly, format);
            if (out.text)
                out.line("H_" + std::to_string(a_n) + ": deg_t " + std::to_string(h.t_degree()) + ", deg_theta " +
                         std::to_string(h.theta_degree()) + (ok ? ", H(theta,theta) = Gamma" : ", diagonal MISMATCH"));
            else
                out.line(j);
            return ok ? 0 : 1;
        }

        if (omg->parsed()) {
            check_common(oc.q, oc.r, oc.prec);
            auto st = make_setting(oc.q, oc.r);
            const std::int64_t pv = v_precision(*st, oc.prec);
            auto om = omega(st->uni, o_tdeg, pv);
            // Omega^{(-1)} = (t - theta) Omega.
            auto lhs = tate_twist(omega(st->uni, o_tdeg, pv * static_cast<std::int64_t>(oc.q)), -1);
            const bool ok = lhs.agrees_with(t_minus_theta_root(*st, 0, o_tdeg) * om);
            if (out.text) {
                for (std::uint32_t k = 0; k <= o_tdeg; ++k) out.line("t^" + std::to_string(k) + ": " + io::to_text(om.coeff(k)));
            } else {
                json j = io::to_json(om);
                j["difference_equation"] = ok;
                j["meta"] = metadata(*omg, format);
                out.line(j);
            }
            return ok ? 0 : 1;
        }

        if (mine->parsed()) {
            check_common(mc.q, mc.r, mc.prec);
            auto st = make_setting(mc.q, mc.r);
            auto basis = enumerate_monomials(*st, m_weight, m_depth, m_colored, m_max);
            auto rep = mine_relations(*st, basis.monomials, mc.prec);
            std::vector<RelationCandidate> implied;
            for (auto& v : stuffle_relations(*st, basis.monomials)) implied.push_back(RelationCandidate{std::move(v), 0, 0, true});
            std::size_t missing = 0;
            for (const auto& v : implied) missing += !in_span(rep.relations, v.coeffs, st->p);
            json names = json::array();
            for (const auto& m : basis.monomials) names.push_back(format_monomial(m));
            if (out.text) {
                out.line("basis of " + std::to_string(basis.monomials.size()) + " monomials, weight " + std::to_string(m_weight));
                for (const auto& c : rep.relations) out.line(candidate_text(c, basis.monomials));
            } else {
                out.line(json{{"type", "basis"}, {"monomials", std::move(names)}, {"meta", metadata(*mine, format)}});
                for (const auto& c : rep.relations) {
                    json j{{"type", "relation"}};
                    j.update(io::to_json(c, basis.monomials));
                    j["stuffle_implied"] = in_span(implied, c.coeffs, st->p);
                    out.line(j);
                }
            }
            json summary{{"type", "summary"},
                         {"basis_size", basis.monomials.size()},
                         {"discovered_dim", rep.discovered_dim},
                         {"confirmed_dim", rep.confirmed_dim},
                         {"unconfirmed", rep.unconfirmed},
                         {"digit_rows", rep.digit_rows},
                         {"separated", rep.separated},
                         {"stuffle_relations", implied.size()},
                         {"stuffle_missing", missing}};
            if (out.text)
                out.line(summary.dump());
            else
                out.line(summary);
            return missing == 0 && rep.separated ? 0 : 1;
        }

        if (scan->parsed()) {
            check_common(xc.q, xc.r, xc.prec);
            if (x_w1 == x_w2) throw UsageError("w1 and w2 must differ");
            auto st = make_setting(xc.q, xc.r);
            auto rep = cross_weight_scan(*st, x_w1, x_w2, x_depth, xc.prec, x_colored);
            json j = io::to_json(rep);
            j["meta"] = metadata(*scan, format);
            out.line(out.text ? std::string(rep.ok() ? "ok" : "fail") + ": " + std::to_string(rep.cross_weight_final) +
                                    " cross-weight relations among " + std::to_string(rep.basis_size) + " monomials"
                              : j.dump());
            return rep.ok() ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
