#include "cmzv/stuffle.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

namespace cmzv {

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    while (n || k) {
        std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // C(ni, ki) mod p with ni < p.
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < ki; ++i) {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        std::uint64_t inv = 1, b = den, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        result = result * (num * inv % p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t chen_delta(std::uint32_t s1, std::uint32_t s2, std::uint32_t j, std::uint32_t p) {
    if (s1 == 0 || s2 == 0 || j == 0 || j >= s1 + s2) throw std::out_of_range("chen_delta: need 0 < j < s1 + s2");
    auto term = [&](std::uint32_t s) -> std::uint64_t {
        std::uint64_t b = binomial_mod(j - 1, s - 1, p);
        return ((s - 1) % 2) ? (p - b) % p : b;
    };
    return static_cast<std::uint32_t>((term(s1) + term(s2)) % p);
}

std::uint64_t irreducible_count(std::uint64_t q, std::uint32_t k) {
    // (1/k) sum_{j | k} mu(j) q^{k/j}
    auto mobius = [](std::uint32_t n) {
        int m = 1;
        for (std::uint32_t f = 2; f * f <= n; ++f) {
            if (n % f == 0) {
                n /= f;
                if (n % f == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    std::int64_t total = 0;
    for (std::uint32_t j = 1; j <= k; ++j) {
        if (k % j) continue;
        std::int64_t pw = 1;
        for (std::uint32_t i = 0; i < k / j; ++i) pw *= static_cast<std::int64_t>(q);
        total += mobius(j) * pw;
    }
    return static_cast<std::uint64_t>(total / k);
}

namespace {

using ConcreteEngine = StuffleEngine<ConcreteColors>;

ConcreteEngine& engine_for(const Setting& st) {
    thread_local std::map<std::pair<std::uint64_t, std::int64_t>, std::unique_ptr<ConcreteEngine>> engines;
    const auto n = static_cast<std::int64_t>(st.color_group_order());
    auto& slot = engines[{st.q, n}];
    if (!slot) slot = std::make_unique<ConcreteEngine>(st.q, ConcreteColors{n});
    return *slot;
}

Word normalized(const Setting& st, Word w) {
    const auto n = static_cast<std::int64_t>(st.color_group_order());
    for (auto& l : w) l.c = ((l.c % n) + n) % n;
    return w;
}

RatFuncExt word_sum(const Setting& st, const Word& w, std::uint32_t d, RelationKind kind) {
    if (w.empty()) return RatFuncExt::one(st.K);
    Index idx = index_from_word(w);
    return kind == RelationKind::same_degree ? nested_power_sum(st, d, idx) : power_sum_lt(st, d + 1, idx);
}

}  // namespace

Word word_from_index(const Setting& st, const Index& idx) {
    idx.validate();
    Word w;
    for (std::size_t i = 0; i < idx.s.size(); ++i) w.push_back(Letter{idx.s[i], idx.colors[i]});
    return normalized(st, w);
}

Index index_from_word(const Word& w) {
    Index idx;
    for (const auto& l : w) {
        idx.s.push_back(l.s);
        idx.colors.push_back(l.c);
    }
    return idx;
}

std::uint32_t word_weight(const Word& w) {
    std::uint32_t t = 0;
    for (const auto& l : w) t += l.s;
    return t;
}

FormalSum depth1_product(const Setting& st, const Letter& a, const Letter& b) {
    auto& eng = engine_for(st);
    return eng.depth1(normalized(st, {a})[0], normalized(st, {b})[0]);
}

FormalSum stuffle_product(const Setting& st, const Word& a, const Word& b) {
    return engine_for(st).same_degree(normalized(st, a), normalized(st, b));
}

FormalSum harmonic_product(const Setting& st, const Word& a, const Word& b) {
    return engine_for(st).harmonic(normalized(st, a), normalized(st, b));
}

Relation zeta_relation(const Setting& st, const Word& a, const Word& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("relation words must be nonempty");
    return Relation{normalized(st, a), normalized(st, b), harmonic_product(st, a, b), RelationKind::truncated};
}

Relation same_degree_relation(const Setting& st, const Word& a, const Word& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("relation words must be nonempty");
    return Relation{normalized(st, a), normalized(st, b), stuffle_product(st, a, b), RelationKind::same_degree};
}

InvariantReport check_invariants(const Setting& st, const Relation& rel) {
    InvariantReport rep;
    const auto n = static_cast<std::int64_t>(st.color_group_order());
    auto color_of = [&](const Word& w) {
        std::int64_t c = 0;
        for (const auto& l : w) c = (c + l.c) % n;
        return c;
    };
    const std::uint32_t wt = word_weight(rel.a) + word_weight(rel.b);
    const std::int64_t col = (color_of(rel.a) + color_of(rel.b)) % n;
    const std::size_t dep = rel.a.size() + rel.b.size();
    for (const auto& [w, c] : rel.rhs) {
        if (word_weight(w) != wt) rep.weight = false;
        if (color_of(w) != col) rep.color = false;
        if (w.size() > dep || w.empty()) rep.depth = false;
    }
    return rep;
}

VerifyReport verify_relation(const Setting& st, const Relation& rel, std::int64_t prec, std::uint32_t d_max) {
    VerifyReport rep;
    for (std::uint32_t d = 0; d <= d_max; ++d) {
        RatFuncExt lhs = word_sum(st, rel.a, d, rel.kind) * word_sum(st, rel.b, d, rel.kind);
        RatFuncExt rhs = RatFuncExt::zero(st.K);
        for (const auto& [w, c] : rel.rhs) rhs += word_sum(st, w, d, rel.kind).scaled(st.K->from_int(c));
        ++rep.exact_checked;
        if (!(lhs == rhs)) {
            rep.exact_ok = false;
            rep.failing_d = d;
            break;
        }
    }
    if (prec > 0 && rel.kind == RelationKind::truncated) {
        rep.numeric_checked = true;
        LaurentScalar lhs = cmzv(st, index_from_word(rel.a), prec).value * cmzv(st, index_from_word(rel.b), prec).value;
        LaurentScalar rhs = LaurentScalar::zero(st.uni, lhs.prec());
        for (const auto& [w, c] : rel.rhs) rhs += cmzv(st, index_from_word(w), prec).value.scaled(st.K->from_int(c));
        if (auto diff = lhs.first_difference(rhs)) {
            rep.numeric_ok = false;
            rep.failing_exponent = diff;
        }
    }
    return rep;
}

FormalCheck verify_same_degree_formal(const Setting& st, const std::vector<std::uint32_t>& sa,
                                      const std::vector<std::uint32_t>& sb, std::uint32_t d_max) {
    using FEngine = StuffleEngine<FormalColors>;
    using FWord = FEngine::Word;
    using Monomial = FormalColors::Color;
    FEngine eng(st.q, FormalColors{});
    FWord A, B;
    for (std::size_t i = 0; i < sa.size(); ++i) A.push_back({sa[i], FormalColors::variable(i)});
    for (std::size_t i = 0; i < sb.size(); ++i) B.push_back({sb[i], FormalColors::variable(sa.size() + i)});
    const auto product = eng.same_degree(A, B);

    // One term: a coefficient, a color monomial and a chain of (degree, s).
    struct Term {
        std::uint32_t coef;
        Monomial mono;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> chain;
    };
    const FormalColors ops;
    auto expand = [&](const FWord& w, std::uint32_t d, std::uint32_t coef, std::vector<Term>& out) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> chain;
        std::function<void(std::size_t, std::uint32_t, Monomial)> rec = [&](std::size_t i, std::uint32_t top, Monomial m) {
            if (i == w.size()) {
                out.push_back({coef, m, chain});
                return;
            }
            // Letter i takes degree e; the first letter is pinned to d.
            const std::uint32_t lo = static_cast<std::uint32_t>(w.size() - 1 - i);
            const std::uint32_t hi = i == 0 ? d : top - 1;
            if (i == 0 && d < lo) return;
            for (std::uint32_t e = (i == 0 ? d : lo); e <= hi && (i == 0 || e < top); ++e) {
                Monomial me = m;
                for (std::uint32_t k = 0; k < e; ++k) me = ops.mul(me, w[i].c);
                chain.emplace_back(e, w[i].s);
                rec(i + 1, e, me);
                chain.pop_back();
            }
        };
        rec(0, d + 1, Monomial{});
    };

    FormalCheck rep;
    const std::int64_t D = st.uni->theta_step();
    const std::uint32_t p = eng.p();
    for (std::uint32_t d = 0; d <= d_max; ++d) {
        std::vector<Term> lhs_a, lhs_b, rhs;
        expand(A, d, 1, lhs_a);
        expand(B, d, 1, lhs_b);
        // LHS terms are products of an A-chain and a B-chain.
        std::vector<Term> all;
        for (const auto& ta : lhs_a)
            for (const auto& tb : lhs_b) {
                Term t{1, ops.mul(ta.mono, tb.mono), ta.chain};
                t.chain.insert(t.chain.end(), tb.chain.begin(), tb.chain.end());
                all.push_back(std::move(t));
            }
        for (const auto& [w, c] : product) expand(w, d, (p - c) % p, all);
        rep.terms += all.size();
        // Denominator bound: deg Lambda = sum_k N_q(k) k max_terms sum_i s_i floor(e_i / k).
        std::int64_t deg_lambda = 0;
        for (std::uint32_t k = 1; k <= std::max<std::uint32_t>(d, 1); ++k) {
            std::int64_t mk = 0;
            for (const auto& t : all) {
                std::int64_t s = 0;
                for (const auto& [e, si] : t.chain) s += static_cast<std::int64_t>(si) * (e / k);
                mk = std::max(mk, s);
            }
            deg_lambda += static_cast<std::int64_t>(irreducible_count(st.q, k)) * k * mk;
        }
        const std::int64_t pv = std::max<std::int64_t>(D * deg_lambda, D);
        std::map<Monomial, LaurentScalar> classes;
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto& t = all[i];
            LaurentScalar v = LaurentScalar::one(st.uni);
            for (const auto& [e, si] : t.chain) v = v * power_sum_laurent(st, e, si, pv);
            v = v.scaled(st.K->from_int(t.coef)).truncated(pv);
            auto it = classes.find(t.mono);
            if (it == classes.end()) classes.emplace(t.mono, v);
            else it->second += v;
        }
        rep.monomial_classes += classes.size();
        rep.certified_theta_digits = std::max(rep.certified_theta_digits, deg_lambda);
        for (const auto& [m, v] : classes) {
            if (v.prec() < pv) {
                rep.ok = false;
                rep.detail = "insufficient precision at d=" + std::to_string(d);
                return rep;
            }
            if (!v.is_zero()) {
                rep.ok = false;
                rep.detail = "nonzero class at d=" + std::to_string(d) + ", v^" + std::to_string(v.valuation());
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace cmzv
