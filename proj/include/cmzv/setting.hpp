#pragma once
// The field tower F_q ⊂ F_{q^r} ⊂ K used by one computation, together with the
// uniformizer over K. Colors are written g^k with g the canonical generator of
// F_{q^r}; they and every scalar live in K.

#include <memory>
#include <string>
#include <vector>

#include "cmzv/gf.hpp"
#include "cmzv/scalars.hpp"

namespace cmzv {

struct Setting {
    std::uint64_t q = 2;
    std::uint32_t p = 2;
    std::uint32_t m = 1;  // q = p^m
    std::uint32_t r = 1;  // colors live in F_{q^r}
    gf::FieldPtr fq;
    gf::FieldPtr color_field;
    gf::FieldPtr K;
    std::shared_ptr<const gf::Embedding> fq_to_K;
    std::shared_ptr<const gf::Embedding> color_to_K;
    SpecPtr uni;
    /// F_q inside K, in packed order of F_q.
    std::vector<gf::Elem> fq_elems;

    const gf::GaloisField& field() const { return *K; }
    /// g^k embedded in K.
    gf::Elem color(std::int64_t k) const;
    gf::Elem embed_color(gf::Elem c) const { return color_to_K->apply(c); }
    /// Exponent k with color(k) == x, or -1 if x is not in F_{q^r}^x.
    std::int64_t color_exponent(gf::Elem x) const;
    /// Ascending order of the color group F_{q^r}^x.
    std::uint64_t color_group_order() const { return color_field->group_order(); }
};

using SettingPtr = std::shared_ptr<const Setting>;

/// K = F_{q^{r * ext}}; the uniformizer has depth `depth` (0 means r).
SettingPtr make_setting(std::uint64_t q, std::uint32_t r, std::uint32_t ext = 1, std::uint32_t depth = 0);

/// Parses "1", "g", "g^k" (k may be negative) into a color exponent.
std::int64_t parse_color(const std::string& text);
std::string format_color(std::int64_t k);

}  // namespace cmzv
