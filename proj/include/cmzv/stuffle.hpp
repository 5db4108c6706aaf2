#pragma once
// Sum-shuffle products of colored power sums. The engine is generic in the
// color monoid: concrete colors are exponents of g modulo q^r - 1, formal
// colors are exponent vectors in free variables.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmzv/powersum.hpp"

namespace cmzv {

/// Binomial coefficient mod a prime, by Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// Delta^j_{s1,s2} = (-1)^{s1-1} C(j-1, s1-1) + (-1)^{s2-1} C(j-1, s2-1) mod p.
std::uint32_t chen_delta(std::uint32_t s1, std::uint32_t s2, std::uint32_t j, std::uint32_t p);

template <class C>
struct LetterT {
    std::uint32_t s = 1;
    C c{};
    friend bool operator==(const LetterT&, const LetterT&) = default;
    friend auto operator<=>(const LetterT&, const LetterT&) = default;
};

template <class C>
using WordT = std::vector<LetterT<C>>;

/// Canonical order: depth, then s-vector, then colors.
template <class C>
struct WordLess {
    bool operator()(const WordT<C>& a, const WordT<C>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].s != b[i].s) return a[i].s < b[i].s;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].c != b[i].c) return a[i].c < b[i].c;
        return false;
    }
};

/// F_p-linear combination of words; zero coefficients are never stored.
template <class C>
using FormalSumT = std::map<WordT<C>, std::uint32_t, WordLess<C>>;

template <class C>
void add_scaled(FormalSumT<C>& out, const WordT<C>& w, std::uint64_t coef, std::uint32_t p) {
    coef %= p;
    if (!coef) return;
    auto [it, inserted] = out.try_emplace(w, 0);
    it->second = static_cast<std::uint32_t>((it->second + coef) % p);
    if (it->second == 0) out.erase(it);
}

template <class C>
void add_scaled(FormalSumT<C>& out, const FormalSumT<C>& in, std::uint64_t coef, std::uint32_t p) {
    for (const auto& [w, c] : in) add_scaled(out, w, coef * c, p);
}

/// Color monoid of exponents of g modulo n.
struct ConcreteColors {
    using Color = std::int64_t;
    std::int64_t n = 1;
    Color one() const { return 0; }
    Color mul(Color a, Color b) const { return ((a + b) % n + n) % n; }
    Color normalize(Color a) const { return ((a % n) + n) % n; }
};

/// Free commutative monoid; colors are exponent vectors without trailing zeros.
struct FormalColors {
    using Color = std::vector<std::int32_t>;
    Color one() const { return {}; }
    Color mul(const Color& a, const Color& b) const {
        Color out(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }
    static Color variable(std::size_t i) {
        Color c(i + 1, 0);
        c[i] = 1;
        return c;
    }
};

template <class Ops>
class StuffleEngine {
public:
    using Color = typename Ops::Color;
    using Letter = LetterT<Color>;
    using Word = WordT<Color>;
    using Sum = FormalSumT<Color>;

    StuffleEngine(std::uint64_t q, Ops ops) : q_(q), p_(gf::factor_prime_power(q).p), ops_(std::move(ops)) {}

    std::uint32_t p() const { return p_; }
    std::uint64_t q() const { return q_; }
    const Ops& ops() const { return ops_; }

    /// S_d(a)S_d(b) = S_d(s1+s2; ab) + sum_{(q-1) | j} Delta^j S_d(s1+s2-j, j; ab, 1).
    Sum depth1(const Letter& a, const Letter& b) const {
        Sum out;
        const Color ab = ops_.mul(a.c, b.c);
        const std::uint32_t w = a.s + b.s;
        add_scaled(out, Word{Letter{w, ab}}, 1, p_);
        for (std::uint32_t j = static_cast<std::uint32_t>(q_ - 1); j < w; j += static_cast<std::uint32_t>(q_ - 1))
            add_scaled(out, Word{Letter{w - j, ab}, Letter{j, ops_.one()}}, chen_delta(a.s, b.s, j, p_), p_);
        return out;
    }

    /// Same-degree product: S_d(A) S_d(B) = sum R[w] S_d(w) for every d.
    Sum same_degree(const Word& a, const Word& b) {
        if (a.empty() || b.empty()) throw std::invalid_argument("same-degree product needs nonempty words");
        auto key = ordered(a, b);
        if (auto it = same_memo_.find(key); it != same_memo_.end()) return it->second;
        Sum out;
        const Sum tails = harmonic(Word(a.begin() + 1, a.end()), Word(b.begin() + 1, b.end()));
        for (const auto& [u, cu] : depth1(a[0], b[0])) {
            Sum rest;
            if (u.size() == 1) {
                rest = tails;
            } else {
                const Word ut(u.begin() + 1, u.end());
                for (const auto& [w, cw] : tails) add_scaled(rest, harmonic(ut, w), cw, p_);
            }
            for (const auto& [w, cw] : rest) {
                Word full;
                full.reserve(w.size() + 1);
                full.push_back(u[0]);
                full.insert(full.end(), w.begin(), w.end());
                add_scaled(out, full, std::uint64_t(cu) * cw, p_);
            }
        }
        same_memo_.emplace(key, out);
        return out;
    }

    /// Harmonic product: S_{<d}(X) S_{<d}(Y) = sum R[w] S_{<d}(w) for every d.
    Sum harmonic(const Word& x, const Word& y) {
        if (x.empty()) return Sum{{y, 1}};
        if (y.empty()) return Sum{{x, 1}};
        auto key = ordered(x, y);
        if (auto it = harm_memo_.find(key); it != harm_memo_.end()) return it->second;
        Sum out;
        prepend_into(out, x[0], harmonic(Word(x.begin() + 1, x.end()), y));
        prepend_into(out, y[0], harmonic(x, Word(y.begin() + 1, y.end())));
        add_scaled(out, same_degree(x, y), 1, p_);
        harm_memo_.emplace(key, out);
        return out;
    }

private:
    static std::pair<Word, Word> ordered(const Word& a, const Word& b) {
        return WordLess<Color>{}(b, a) ? std::make_pair(b, a) : std::make_pair(a, b);
    }
    void prepend_into(Sum& out, const Letter& l, const Sum& in) const {
        for (const auto& [w, c] : in) {
            Word full;
            full.reserve(w.size() + 1);
            full.push_back(l);
            full.insert(full.end(), w.begin(), w.end());
            add_scaled(out, full, c, p_);
        }
    }

    std::uint64_t q_;
    std::uint32_t p_;
    Ops ops_;
    std::map<std::pair<Word, Word>, Sum> same_memo_;
    std::map<std::pair<Word, Word>, Sum> harm_memo_;
};

// Concrete words: colors are exponents of g in F_{q^r}^x.
using Letter = LetterT<std::int64_t>;
using Word = WordT<std::int64_t>;
using FormalSum = FormalSumT<std::int64_t>;

Word word_from_index(const Setting& st, const Index& idx);
Index index_from_word(const Word& w);
std::uint32_t word_weight(const Word& w);

/// depth1_product for concrete colors.
FormalSum depth1_product(const Setting& st, const Letter& a, const Letter& b);
/// S_d(a) S_d(b) expansion, valid for every d.
FormalSum stuffle_product(const Setting& st, const Word& a, const Word& b);
/// S_{<d}(a) S_{<d}(b) expansion, valid for every d; its d -> infinity limit
/// is the zeta product.
FormalSum harmonic_product(const Setting& st, const Word& a, const Word& b);

enum class RelationKind { same_degree, truncated };

struct Relation {
    Word a;
    Word b;
    FormalSum rhs;
    RelationKind kind = RelationKind::truncated;
};

/// zeta(a) zeta(b) = sum rhs[w] zeta(w).
Relation zeta_relation(const Setting& st, const Word& a, const Word& b);
Relation same_degree_relation(const Setting& st, const Word& a, const Word& b);

struct InvariantReport {
    bool weight = true;
    bool color = true;
    bool depth = true;
    bool ok() const { return weight && color && depth; }
};
/// Weight, color product and depth conservation on every term.
InvariantReport check_invariants(const Setting& st, const Relation& rel);

struct VerifyReport {
    bool exact_ok = true;
    std::uint32_t exact_checked = 0;  // number of d values checked
    std::optional<std::uint32_t> failing_d;
    bool numeric_ok = true;
    bool numeric_checked = false;
    std::optional<std::int64_t> failing_exponent;
    bool ok() const { return exact_ok && numeric_ok; }
};

/// Exact check for d <= d_max, plus (for zeta relations) a numeric check at
/// prec theta-digits; prec <= 0 skips the numeric part.
VerifyReport verify_relation(const Setting& st, const Relation& rel, std::int64_t prec, std::uint32_t d_max);

/// Exact verification of the same-degree product for all colorings of the
/// shapes sa, sb at once: colors are free variables and each monomial class
/// is checked as a rational-function identity through a denominator bound.
struct FormalCheck {
    bool ok = true;
    std::size_t monomial_classes = 0;
    std::size_t terms = 0;
    std::int64_t certified_theta_digits = 0;
    std::string detail;
};
FormalCheck verify_same_degree_formal(const Setting& st, const std::vector<std::uint32_t>& sa,
                                      const std::vector<std::uint32_t>& sb, std::uint32_t d_max);

/// Number of monic irreducibles of degree k over F_q.
std::uint64_t irreducible_count(std::uint64_t q, std::uint32_t k);

}  // namespace cmzv
