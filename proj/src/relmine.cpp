#include "cmzv/relmine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "cmzv/stuffle.hpp"

namespace cmzv {

std::uint32_t Monomial::weight() const {
    std::uint32_t w = 0;
    for (const auto& [idx, e] : factors) w += idx.weight() * e;
    return w;
}

std::vector<Index> enumerate_indices(const Setting& st, std::uint32_t w_max, std::uint32_t depth_max, bool colored) {
    const auto ncol = colored ? static_cast<std::int64_t>(st.color_group_order()) : 1;
    std::vector<Index> out;
    for (std::uint32_t w = 1; w <= w_max; ++w)
        for (std::uint32_t n = 1; n <= std::min(w, depth_max); ++n) {
            // Compositions of w into n parts, lexicographic.
            std::vector<std::vector<std::uint32_t>> comps;
            std::vector<std::uint32_t> cur;
            std::function<void(std::uint32_t)> rec = [&](std::uint32_t left) {
                if (cur.size() == n) {
                    if (left == 0) comps.push_back(cur);
                    return;
                }
                const auto rest = static_cast<std::uint32_t>(n - cur.size() - 1);
                for (std::uint32_t s = 1; s + rest <= left; ++s) {
                    cur.push_back(s);
                    rec(left - s);
                    cur.pop_back();
                }
            };
            rec(w);
            for (const auto& s : comps) {
                std::vector<std::int64_t> colors(n, 0);
                for (;;) {
                    out.push_back(Index{s, colors});
                    std::size_t i = n;
                    while (i > 0 && colors[i - 1] == ncol - 1) colors[--i] = 0;
                    if (i == 0) break;
                    ++colors[i - 1];
                }
            }
        }
    return out;
}

MonomialBasis enumerate_monomials(const Setting& st, std::uint32_t w, std::uint32_t depth_max, bool colored,
                                  std::size_t max_size) {
    if (w == 0) throw std::invalid_argument("enumerate_monomials: weight must be positive");
    MonomialBasis basis{st.q, st.r, w, depth_max, colored, {}};
    const auto idx = enumerate_indices(st, w, depth_max, colored);
    // Multisets of indices (non-decreasing positions) with total weight w.
    std::vector<std::pair<std::size_t, std::uint32_t>> cur;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t from, std::uint32_t left) {
        if (left == 0) {
            Monomial m;
            for (const auto& [i, e] : cur) m.factors.emplace_back(idx[i], e);
            basis.monomials.push_back(std::move(m));
            if (basis.monomials.size() > max_size) throw std::length_error("enumerate_monomials: basis too large");
            return;
        }
        for (std::size_t i = from; i < idx.size(); ++i) {
            const std::uint32_t wi = idx[i].weight();
            if (wi > left) continue;
            for (std::uint32_t e = 1; e * wi <= left; ++e) {
                cur.emplace_back(i, e);
                rec(i + 1, left - e * wi);
                cur.pop_back();
            }
        }
    };
    rec(0, w);
    return basis;
}

std::string format_monomial(const Monomial& m) {
    std::string out;
    for (const auto& [idx, e] : m.factors) {
        if (!out.empty()) out += " * ";
        // Uncolored indices print without the color list.
        bool plain = std::all_of(idx.colors.begin(), idx.colors.end(), [](std::int64_t c) { return c == 0; });
        std::string text = format_index(idx);
        if (plain) text = text.substr(0, text.find(':'));
        out += "zeta(" + text + ")";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

namespace {

// zeta values per (setting identity, index, prec) for the duration of a call.
class ValueCache {
public:
    explicit ValueCache(const Setting& st) : st_(st) {}
    const LaurentScalar& get(const Index& idx, std::int64_t prec) {
        auto key = std::make_pair(idx, prec);
        auto it = map_.find(key);
        if (it == map_.end()) it = map_.emplace(key, cmzv(st_, idx, prec).value).first;
        return it->second;
    }

private:
    const Setting& st_;
    std::map<std::pair<Index, std::int64_t>, LaurentScalar> map_;
};

LaurentScalar monomial_value_cached(const Setting& st, const Monomial& m, std::int64_t prec, ValueCache& cache) {
    // Each factor has valuation -D deg; extra digits cover the loss in the product.
    std::int64_t extra = 0;
    for (const auto& [idx, e] : m.factors) extra += std::max<std::int64_t>(0, certified_degree(st, idx)) * e;
    LaurentScalar acc = LaurentScalar::one(st.uni);
    for (const auto& [idx, e] : m.factors) acc = acc * cache.get(idx, prec + extra).pow(e);
    const std::int64_t pv = v_precision(st, prec);
    if (acc.prec() < pv) throw PrecisionError("monomial_value: precision loss");
    return acc.truncated(pv);
}

// Row-echelon accumulator over F_p.
class Echelon {
public:
    Echelon(std::size_t ncols, std::uint32_t p) : n_(ncols), p_(p) {}

    void insert(std::vector<std::uint32_t> row) {
        for (const auto& [pivot, r] : rows_) {
            if (row[pivot] == 0) continue;
            const std::uint64_t f = row[pivot];
            for (std::size_t j = 0; j < n_; ++j) row[j] = static_cast<std::uint32_t>((row[j] + (p_ - f) * r[j]) % p_);
        }
        std::size_t pivot = 0;
        while (pivot < n_ && row[pivot] == 0) ++pivot;
        if (pivot == n_) return;
        const std::uint64_t inv = modinv(row[pivot]);
        for (auto& x : row) x = static_cast<std::uint32_t>(x * inv % p_);
        // Keep reduced form: clear the new pivot from earlier rows.
        for (auto& [pv, r] : rows_) {
            if (r[pivot] == 0) continue;
            const std::uint64_t f = r[pivot];
            for (std::size_t j = 0; j < n_; ++j) r[j] = static_cast<std::uint32_t>((r[j] + (p_ - f) * row[j]) % p_);
        }
        rows_.emplace(pivot, std::move(row));
    }

    std::size_t rank() const { return rows_.size(); }

    /// Nullspace basis in reduced echelon form (free column leads with 1).
    std::vector<std::vector<std::uint32_t>> nullspace() const {
        std::vector<std::vector<std::uint32_t>> out;
        for (std::size_t free = 0; free < n_; ++free) {
            if (rows_.count(free)) continue;
            std::vector<std::uint32_t> v(n_, 0);
            v[free] = 1;
            for (const auto& [pivot, r] : rows_) v[pivot] = (p_ - r[free]) % p_;
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    std::uint64_t modinv(std::uint64_t a) const {
        std::uint64_t r = 1, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

    std::size_t n_;
    std::uint32_t p_;
    std::map<std::size_t, std::vector<std::uint32_t>> rows_;
};

// Echelon of the digit matrix: one row per (v-exponent, F_p coordinate).
Echelon digit_echelon(const Setting& st, const std::vector<LaurentScalar>& values, std::size_t* rows) {
    const auto& K = *st.K;
    const std::size_t n = values.size();
    std::map<std::int64_t, std::vector<std::vector<std::uint32_t>>> digits;  // exponent -> coord -> column values
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& [e, x] : values[c].terms()) {
            auto& slot = digits[e];
            const auto co = K.coeffs(x);
            if (slot.empty()) slot.assign(K.degree(), std::vector<std::uint32_t>(n, 0));
            for (std::size_t k = 0; k < co.size(); ++k) slot[k][c] = co[k];
        }
    Echelon ech(n, st.p);
    for (auto& [e, slot] : digits)
        for (auto& row : slot) {
            ech.insert(row);
            if (rows) ++*rows;
        }
    return ech;
}

}  // namespace

LaurentScalar monomial_value(const Setting& st, const Monomial& m, std::int64_t prec) {
    ValueCache cache(st);
    return monomial_value_cached(st, m, prec, cache);
}

MiningReport mine_relations(const Setting& st, const std::vector<Monomial>& basis, std::int64_t prec) {
    if (basis.empty()) throw std::invalid_argument("mine_relations: empty basis");
    MiningReport rep;
    ValueCache cache(st);
    auto values_at = [&](std::int64_t pr) {
        std::vector<LaurentScalar> v;
        for (const auto& m : basis) v.push_back(monomial_value_cached(st, m, pr, cache));
        return v;
    };
    const auto lo = values_at(prec);
    for (const auto& v : lo)
        if (v.is_zero()) rep.separated = false;
    const auto found = digit_echelon(st, lo, &rep.digit_rows).nullspace();
    const auto confirmed = digit_echelon(st, values_at(2 * prec), nullptr).nullspace();
    rep.discovered_dim = found.size();
    rep.confirmed_dim = confirmed.size();
    rep.unconfirmed = found.size() - confirmed.size();
    for (const auto& c : confirmed) rep.relations.push_back(RelationCandidate{c, prec, 2 * prec, true});
    return rep;
}

std::vector<std::vector<std::uint32_t>> stuffle_relations(const Setting& st, const std::vector<Monomial>& basis) {
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], i);
    const std::uint32_t p = st.p;
    // Multiset of indices -> canonical monomial.
    auto canon = [](std::vector<Index> idx) {
        std::sort(idx.begin(), idx.end());
        Monomial m;
        for (const auto& i : idx) {
            if (!m.factors.empty() && m.factors.back().first == i) ++m.factors.back().second;
            else m.factors.emplace_back(i, 1);
        }
        return m;
    };
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t mi = 0; mi < basis.size(); ++mi) {
        std::vector<Index> flat;
        for (const auto& [idx, e] : basis[mi].factors)
            for (std::uint32_t k = 0; k < e; ++k) flat.push_back(idx);
        for (std::size_t a = 0; a < flat.size(); ++a)
            for (std::size_t b = a + 1; b < flat.size(); ++b) {
                std::vector<Index> rest;
                for (std::size_t k = 0; k < flat.size(); ++k)
                    if (k != a && k != b) rest.push_back(flat[k]);
                const auto rel = zeta_relation(st, word_from_index(st, flat[a]), word_from_index(st, flat[b]));
                std::vector<std::uint32_t> v(basis.size(), 0);
                v[mi] = 1;
                bool ok = true;
                for (const auto& [w, c] : rel.rhs) {
                    auto terms = rest;
                    terms.push_back(index_from_word(w));
                    auto it = pos.find(canon(terms));
                    if (it == pos.end()) {
                        ok = false;
                        break;
                    }
                    v[it->second] = (v[it->second] + p - c) % p;
                }
                if (ok) out.push_back(std::move(v));
            }
    }
    return out;
}

bool in_span(const std::vector<RelationCandidate>& rels, const std::vector<std::uint32_t>& v, std::uint32_t p) {
    if (rels.empty()) {
        for (auto x : v)
            if (x) return false;
        return true;
    }
    Echelon e(v.size(), p);
    for (const auto& r : rels) e.insert(r.coeffs);
    const std::size_t before = e.rank();
    e.insert(v);
    return e.rank() == before;
}

ScanReport cross_weight_scan(const Setting& st, std::uint32_t w1, std::uint32_t w2, std::uint32_t depth_max, std::int64_t prec,
                             bool colored) {
    if (w1 == w2) throw std::invalid_argument("cross_weight_scan: weights must differ");
    auto b1 = enumerate_monomials(st, w1, depth_max, colored);
    auto b2 = enumerate_monomials(st, w2, depth_max, colored);
    std::vector<Monomial> all = b1.monomials;
    all.insert(all.end(), b2.monomials.begin(), b2.monomials.end());
    const std::size_t split = b1.monomials.size();
    auto crossing = [&](const std::vector<std::vector<std::uint32_t>>& rels) {
        std::size_t n = 0;
        for (const auto& r : rels) {
            bool lo = false, hi = false;
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i]) (i < split ? lo : hi) = true;
            if (lo && hi) ++n;
        }
        return n;
    };
    ScanReport rep;
    rep.basis_size = all.size();
    ValueCache cache(st);
    auto nullspace_at = [&](std::int64_t pr) {
        std::vector<LaurentScalar> v;
        for (const auto& m : all) v.push_back(monomial_value_cached(st, m, pr, cache));
        return digit_echelon(st, v, nullptr).nullspace();
    };
    const auto first = nullspace_at(prec);
    rep.cross_weight_initial = crossing(first);
    const auto second = nullspace_at(2 * prec);
    rep.cross_weight_final = crossing(second);
    rep.relations = second.size();
    return rep;
}

}  // namespace cmzv
