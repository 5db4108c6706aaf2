#pragma once
// Power sums S_d(s), their colored nested versions and colored multizeta
// values as truncated Laurent series with a certified d-cutoff.

#include <cstdint>
#include <string>
#include <vector>

#include "cmzv/ringA.hpp"
#include "cmzv/scalars.hpp"
#include "cmzv/setting.hpp"

namespace cmzv {

/// (s_1, ..., s_n; g^{k_1}, ..., g^{k_n}); colors are exponents of the
/// canonical generator g of F_{q^r}.
struct Index {
    std::vector<std::uint32_t> s;
    std::vector<std::int64_t> colors;

    std::uint32_t weight() const;
    std::uint32_t depth() const { return static_cast<std::uint32_t>(s.size()); }
    void validate() const;
    Index tail(std::size_t from) const;

    friend bool operator==(const Index&, const Index&) = default;
    friend auto operator<=>(const Index&, const Index&) = default;
};

/// "s1,s2" with colors "g^a,g^b" (colors default to 1), or "s1,s2:g^a,g^b".
Index parse_index(const std::string& s, const std::string& colors = "");
std::string format_index(const Index& idx);

/// S_d(s) by monic enumeration.
RatFuncExt power_sum(const Setting& st, std::uint32_t d, std::uint32_t s);
/// S_d(idx) = xi_1^d S_d(s_1) S_{<d}(tail).
RatFuncExt nested_power_sum(const Setting& st, std::uint32_t d, const Index& idx);
/// S_{<d}(idx); equals 1 for the empty index.
RatFuncExt power_sum_lt(const Setting& st, std::uint32_t d, const Index& idx);

/// S_d(s) in the uniformizer, exact through v-exponent pv.
LaurentScalar power_sum_laurent(const Setting& st, std::uint32_t d, std::uint32_t s, std::int64_t pv);

struct CmzvValue {
    LaurentScalar value;
    std::int64_t leading_degree = 0;  // theta-degree certified by deg S_{n-1}(s_1)...S_0(s_n)
    std::uint32_t d_cutoff = 0;       // degrees d_1 >= d_cutoff are below precision
    std::int64_t prec = 0;            // theta-digits requested
};

/// zeta_A(s; xi) to prec theta-digits (v-precision prec * (q-1) q^depth).
CmzvValue cmzv(const Setting& st, const Index& idx, std::int64_t prec);

/// Sum over d_1 > ... > d_n >= 0 with d_1 < d_bound, exact.
RatFuncExt cmzv_partial(const Setting& st, const Index& idx, std::uint32_t d_bound);

/// Sum of deg S_{n-i}(s_i): the theta-degree of the value.
std::int64_t certified_degree(const Setting& st, const Index& idx);

/// theta-precision to uniformizer precision.
std::int64_t v_precision(const Setting& st, std::int64_t prec);

}  // namespace cmzv
