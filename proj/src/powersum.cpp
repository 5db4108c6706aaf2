#include "cmzv/powersum.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cmzv {

namespace {

std::mutex g_cache_mutex;
std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t, std::uint32_t>, RatFuncExt> g_exact_cache;
std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>, LaurentScalar> g_laurent_cache;

RatFuncExt sum_tree(std::vector<RatFuncExt>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = (lo + hi) / 2;
    return sum_tree(xs, lo, mid) + sum_tree(xs, mid, hi);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

std::uint32_t Index::weight() const {
    std::uint32_t w = 0;
    for (auto x : s) w += x;
    return w;
}

void Index::validate() const {
    if (s.empty()) throw std::invalid_argument("index must be nonempty");
    if (s.size() != colors.size()) throw std::invalid_argument("index and colors differ in length");
    for (auto x : s)
        if (x == 0) throw std::invalid_argument("index entries must be positive");
}

Index Index::tail(std::size_t from) const {
    Index t;
    t.s.assign(s.begin() + static_cast<std::ptrdiff_t>(from), s.end());
    t.colors.assign(colors.begin() + static_cast<std::ptrdiff_t>(from), colors.end());
    return t;
}

Index parse_index(const std::string& text, const std::string& colors) {
    std::string sp = text, cp = colors;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        sp = text.substr(0, pos);
        cp = text.substr(pos + 1);
    }
    Index idx;
    for (const auto& part : split(sp, ',')) {
        std::size_t used = 0;
        long v = std::stol(part, &used);
        if (used != part.size() || v <= 0) throw std::invalid_argument("bad index entry: " + part);
        idx.s.push_back(static_cast<std::uint32_t>(v));
    }
    if (cp.empty()) {
        idx.colors.assign(idx.s.size(), 0);
    } else {
        for (const auto& part : split(cp, ',')) idx.colors.push_back(parse_color(part));
    }
    idx.validate();
    return idx;
}

std::string format_index(const Index& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.s.size(); ++i) out += (i ? "," : "") + std::to_string(idx.s[i]);
    out += ":";
    for (std::size_t i = 0; i < idx.colors.size(); ++i) out += (i ? "," : "") + format_color(idx.colors[i]);
    return out;
}

RatFuncExt power_sum(const Setting& st, std::uint32_t d, std::uint32_t s) {
    if (s == 0) throw std::invalid_argument("power sums need s >= 1");
    auto key = std::make_tuple(st.q, st.K->degree(), d, s);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        if (auto it = g_exact_cache.find(key); it != g_exact_cache.end()) return it->second;
    }
    std::vector<RatFuncExt> terms;
    for_each_monic(st, d, [&](const PolyA& a) { terms.emplace_back(PolyA::one(st.K), a.pow(s)); });
    RatFuncExt out = sum_tree(terms, 0, terms.size());
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_exact_cache.emplace(key, out);
    return out;
}

RatFuncExt nested_power_sum(const Setting& st, std::uint32_t d, const Index& idx) {
    idx.validate();
    if (d + 1 < idx.depth()) return RatFuncExt::zero(st.K);
    RatFuncExt head = power_sum(st, d, idx.s[0]).scaled(st.color(idx.colors[0] * static_cast<std::int64_t>(d)));
    if (idx.depth() == 1) return head;
    return head * power_sum_lt(st, d, idx.tail(1));
}

RatFuncExt power_sum_lt(const Setting& st, std::uint32_t d, const Index& idx) {
    if (idx.s.empty()) return RatFuncExt::one(st.K);
    RatFuncExt acc = RatFuncExt::zero(st.K);
    for (std::uint32_t e = 0; e < d; ++e) acc += nested_power_sum(st, e, idx);
    return acc;
}

LaurentScalar power_sum_laurent(const Setting& st, std::uint32_t d, std::uint32_t s, std::int64_t pv) {
    const auto& spec = st.uni;
    auto key = std::make_tuple(st.q, st.K->degree(), spec->r, d, s);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        if (auto it = g_laurent_cache.find(key); it != g_laurent_cache.end() && it->second.prec() >= pv) {
            LaurentScalar hit = it->second.truncated(pv);
            return LaurentScalar::from_terms(spec, hit.terms(), hit.prec());
        }
    }
    LaurentScalar acc = LaurentScalar::zero(spec, pv);
    const std::int64_t lowest = static_cast<std::int64_t>(d) * s * spec->theta_step();
    if (lowest <= pv) {
        for_each_monic(st, d, [&](const PolyA& a) { acc += laurent_inv(to_laurent(a.pow(s), spec), pv); });
    }
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_laurent_cache[key] = acc;
    return acc;
}

std::int64_t v_precision(const Setting& st, std::int64_t prec) {
    if (prec < 1) throw std::invalid_argument("precision must be at least 1");
    return prec * st.uni->theta_step();
}

std::int64_t certified_degree(const Setting& st, const Index& idx) {
    idx.validate();
    std::int64_t deg = 0;
    const std::uint32_t n = idx.depth();
    for (std::uint32_t i = 0; i < n; ++i) deg += power_sum(st, n - 1 - i, idx.s[i]).degree();
    return deg;
}

CmzvValue cmzv(const Setting& st, const Index& idx, std::int64_t prec) {
    idx.validate();
    const auto& spec = st.uni;
    const std::int64_t pv = v_precision(st, prec);
    const std::uint32_t n = idx.depth();
    // Cutoff: S_d(s_1) has strictly decreasing degree and every other factor
    // has degree <= 0, so once S_{d0}(s_1) vanishes to precision the tail does.
    std::uint32_t cutoff = n - 1;
    for (;; ++cutoff) {
        if (cutoff > 40) throw PrecisionError("cmzv: d-cutoff budget exhausted");
        if (power_sum_laurent(st, cutoff, idx.s[0], pv).is_zero()) break;
    }
    // T[k][e] = sum_{e' < e} U_k(e'), U_k(e) = xi_k^e S_e(s_k) T[k+1][e].
    std::vector<LaurentScalar> next(cutoff + 1, LaurentScalar::one(spec));
    for (std::uint32_t k = n; k-- > 0;) {
        std::vector<LaurentScalar> cur(cutoff + 1, LaurentScalar::zero(spec, pv));
        LaurentScalar run = LaurentScalar::zero(spec, pv);
        for (std::uint32_t e = 0; e < cutoff; ++e) {
            cur[e] = run;
            if (e + k + 1 >= n) {
                LaurentScalar u = power_sum_laurent(st, e, idx.s[k], pv) * next[e];
                run += u.scaled(st.color(idx.colors[k] * static_cast<std::int64_t>(e)));
            }
        }
        cur[cutoff] = run;
        next = std::move(cur);
    }
    CmzvValue out;
    out.value = next[cutoff].truncated(pv);
    out.leading_degree = certified_degree(st, idx);
    out.d_cutoff = cutoff;
    out.prec = prec;
    return out;
}

RatFuncExt cmzv_partial(const Setting& st, const Index& idx, std::uint32_t d_bound) {
    return power_sum_lt(st, d_bound, idx);
}

}  // namespace cmzv
