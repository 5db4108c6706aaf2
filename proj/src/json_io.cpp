#include "cmzv/json_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmzv::io {

namespace {

json header(const UniformizerSpec& spec) {
    const auto& K = spec.F();
    return json{{"q", spec.q},
                {"depth", spec.r},
                {"field", {{"p", K.p()}, {"e", K.degree()}, {"modulus", K.spec().modulus}}}};
}

std::string elem_text(const gf::GaloisField& K, gf::Elem x) {
    auto c = K.coeffs(x);
    std::string out;
    int nonzero = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (!c[i]) continue;
        ++nonzero;
        if (!out.empty()) out += "+";
        if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    if (out.empty()) return "0";
    return nonzero > 1 ? "(" + out + ")" : out;
}

std::vector<std::vector<std::uint32_t>> poly_json(const gf::GaloisField& K, const PolyA& f) {
    std::vector<std::vector<std::uint32_t>> out;
    for (auto c : f.coeffs()) out.push_back(K.coeffs(c));
    return out;
}

}  // namespace

json elem_to_json(const gf::GaloisField& K, gf::Elem x) {
    auto c = K.coeffs(x);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

gf::Elem elem_from_json(const gf::GaloisField& K, const json& j) {
    auto c = j.get<std::vector<std::uint32_t>>();
    if (c.size() > K.degree()) throw std::invalid_argument("field element has too many coefficients");
    for (auto v : c)
        if (v >= K.p()) throw std::invalid_argument("field coefficient out of range");
    c.resize(K.degree(), 0);
    return K.from_coeffs(c);
}

json to_json(const LaurentScalar& x, bool with_header) {
    json out = with_header ? header(*x.spec()) : json::object();
    const auto& K = x.spec()->F();
    json terms = json::array();
    for (const auto& [e, c] : x.terms()) terms.push_back(json::array({e, elem_to_json(K, c)}));
    out["terms"] = std::move(terms);
    out["prec"] = x.is_exact() ? json(nullptr) : json(x.prec());
    return out;
}

LaurentScalar laurent_from_json(const json& j, const SpecPtr& spec) {
    if (j.contains("q") && (j.at("q").get<std::uint64_t>() != spec->q || j.at("depth").get<std::uint32_t>() != spec->r))
        throw std::invalid_argument("scalar belongs to a different uniformizer");
    if (j.contains("field") && j.at("field").at("e").get<std::uint32_t>() != spec->F().degree())
        throw std::invalid_argument("scalar belongs to a different field");
    const std::int64_t prec = j.at("prec").is_null() ? kExact : j.at("prec").get<std::int64_t>();
    std::vector<LaurentScalar::Term> terms;
    for (const auto& t : j.at("terms")) terms.emplace_back(t.at(0).get<std::int64_t>(), elem_from_json(spec->F(), t.at(1)));
    return LaurentScalar::from_terms(spec, std::move(terms), prec);
}

LaurentScalar laurent_from_json(const json& j) {
    const auto& f = j.at("field");
    auto K = gf::GaloisField::make(f.at("p").get<std::uint32_t>(), f.at("e").get<std::uint32_t>());
    if (f.contains("modulus") && f.at("modulus").get<std::vector<std::uint32_t>>() != K->spec().modulus)
        throw std::invalid_argument("unsupported field modulus");
    auto spec = make_uniformizer(j.at("q").get<std::uint64_t>(), j.at("depth").get<std::uint32_t>(), K);
    return laurent_from_json(j, spec);
}

std::string to_text(const LaurentScalar& x) {
    const auto& spec = *x.spec();
    const auto& K = spec.F();
    const std::int64_t D = spec.theta_step();
    bool theta_form = true;
    for (const auto& t : x.terms()) theta_form = theta_form && t.first % D == 0;
    std::ostringstream os;
    if (x.is_zero()) {
        os << "0";
    } else if (theta_form) {
        // v^{kD} = (-1)^k theta^{-k}
        os << "deg_theta = " << -(x.terms().front().first / D) << ": ";
        bool first = true;
        for (const auto& [e, c] : x.terms()) {
            std::int64_t k = e / D;
            gf::Elem cc = (k % 2 != 0) ? K.neg(c) : c;
            if (!first) os << " + ";
            first = false;
            os << elem_text(K, cc);
            if (k != 0) os << "*theta^" << -k;
        }
    } else {
        bool first = true;
        for (const auto& [e, c] : x.terms()) {
            if (!first) os << " + ";
            first = false;
            os << elem_text(K, c) << "*v^" << e;
        }
    }
    if (!x.is_exact()) {
        if (x.prec() % D == 0)
            os << " + O(theta^" << -(x.prec() / D) - 1 << ")";
        else
            os << " + O(v^" << x.prec() + 1 << ")";
    }
    return os.str();
}

json to_json(const Setting& st, const RatFuncExt& f) {
    return json{{"num", poly_json(*st.K, f.num())}, {"den", poly_json(*st.K, f.den())}, {"degree", f.is_zero() ? json(nullptr) : json(f.degree())}};
}

json to_json(const TateSeries& f) {
    json out = header(*f.spec());
    out["t_deg"] = f.t_deg();
    json cs = json::array();
    for (const auto& c : f.coeffs()) cs.push_back(to_json(c, false));
    out["coeffs"] = std::move(cs);
    return out;
}

json to_json(const ATPoly& h) {
    json cs = json::array();
    std::uint32_t p = 2;
    for (const auto& c : h.coeffs) {
        p = c.field()->p();
        cs.push_back(poly_json(*c.field(), c));
    }
    return json{{"p", p}, {"t_degree", h.t_degree()}, {"theta_degree", h.theta_degree()}, {"coeffs", std::move(cs)}};
}

namespace {

std::string relation_kind(RelationKind k) { return k == RelationKind::same_degree ? "same_degree" : "truncated"; }

}  // namespace

json to_json(const Relation& rel) {
    json rhs = json::array();
    for (const auto& [w, c] : rel.rhs) rhs.push_back(json{{"index", format_index(index_from_word(w))}, {"coeff", c}});
    return json{{"kind", relation_kind(rel.kind)},
                {"a", format_index(index_from_word(rel.a))},
                {"b", format_index(index_from_word(rel.b))},
                {"rhs", std::move(rhs)}};
}

Relation relation_from_json(const Setting& st, const json& j) {
    Relation rel;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "same_degree")
        rel.kind = RelationKind::same_degree;
    else if (kind == "truncated")
        rel.kind = RelationKind::truncated;
    else
        throw std::invalid_argument("unknown relation kind: " + kind);
    rel.a = word_from_index(st, parse_index(j.at("a").get<std::string>()));
    rel.b = word_from_index(st, parse_index(j.at("b").get<std::string>()));
    for (const auto& t : j.at("rhs")) {
        auto w = word_from_index(st, parse_index(t.at("index").get<std::string>()));
        add_scaled(rel.rhs, w, t.at("coeff").get<std::uint32_t>(), st.p);
    }
    return rel;
}

std::string to_text(const Relation& rel) {
    const char* fn = rel.kind == RelationKind::same_degree ? "S_d" : "zeta";
    std::string out = std::string(fn) + "(" + format_index(index_from_word(rel.a)) + ") * " + fn + "(" +
                      format_index(index_from_word(rel.b)) + ") =";
    if (rel.rhs.empty()) return out + " 0";
    bool first = true;
    for (const auto& [w, c] : rel.rhs) {
        out += first ? " " : " + ";
        first = false;
        if (c != 1) out += std::to_string(c) + "*";
        out += std::string(fn) + "(" + format_index(index_from_word(w)) + ")";
    }
    return out;
}

Monomial parse_monomial(const std::string& text) {
    Monomial m;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    while (true) {
        skip_ws();
        if (text.compare(pos, 5, "zeta(") != 0) throw std::invalid_argument("bad monomial: " + text);
        pos += 5;
        auto close = text.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("bad monomial: " + text);
        Index idx = parse_index(text.substr(pos, close - pos));
        pos = close + 1;
        std::uint32_t e = 1;
        if (pos < text.size() && text[pos] == '^') {
            std::size_t used = 0;
            long v = std::stol(text.substr(pos + 1), &used);
            if (v <= 0) throw std::invalid_argument("bad exponent in monomial: " + text);
            e = static_cast<std::uint32_t>(v);
            pos += 1 + used;
        }
        m.factors.emplace_back(std::move(idx), e);
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] != '*') throw std::invalid_argument("bad monomial: " + text);
        ++pos;
    }
    std::sort(m.factors.begin(), m.factors.end());
    return m;
}

json to_json(const RelationCandidate& c, const std::vector<Monomial>& basis) {
    if (c.coeffs.size() != basis.size()) throw std::invalid_argument("candidate does not match the basis");
    json support = json::array();
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c.coeffs[i]) support.push_back(json{{"monomial", format_monomial(basis[i])}, {"coeff", c.coeffs[i]}});
    return json{{"coeffs", c.coeffs},
                {"support", std::move(support)},
                {"discovery_prec", c.discovery_prec},
                {"confirmation_prec", c.confirmation_prec},
                {"confirmed", c.confirmed}};
}

RelationCandidate candidate_from_json(const json& j) {
    RelationCandidate c;
    c.coeffs = j.at("coeffs").get<std::vector<std::uint32_t>>();
    c.discovery_prec = j.at("discovery_prec").get<std::int64_t>();
    c.confirmation_prec = j.at("confirmation_prec").get<std::int64_t>();
    c.confirmed = j.at("confirmed").get<bool>();
    return c;
}

json to_json(const TrivReport& rep) {
    return json{{"status", rep.ok ? "ok" : "fail"},
                {"max_checked_exponent", rep.max_checked_exponent},
                {"entries_checked", rep.entries_checked},
                {"checks",
                 {{"difference_equation", rep.difference_equation},
                  {"upsilon_inverse", rep.upsilon_inverse},
                  {"closed_form", rep.closed_form},
                  {"det_nonzero", rep.det_nonzero},
                  {"structure", rep.structure}}},
                {"detail", rep.detail}};
}

json to_json(const ScanReport& rep) {
    return json{{"status", rep.ok() ? "ok" : "fail"},
                {"basis_size", rep.basis_size},
                {"relations", rep.relations},
                {"cross_weight_initial", rep.cross_weight_initial},
                {"cross_weight_final", rep.cross_weight_final}};
}

}  // namespace cmzv::io
