#include "cmzv/setting.hpp"

#include <stdexcept>

namespace cmzv {

gf::Elem Setting::color(std::int64_t k) const { return embed_color(color_field->gen_pow(k)); }

std::int64_t Setting::color_exponent(gf::Elem x) const {
    if (x.is_zero()) return -1;
    const std::uint64_t n = color_field->group_order();
    const gf::Elem g = color(1);
    for (std::uint64_t k = 0; k < n; ++k)
        if (K->pow(g, static_cast<std::int64_t>(k)) == x) return static_cast<std::int64_t>(k);
    return -1;
}

SettingPtr make_setting(std::uint64_t q, std::uint32_t r, std::uint32_t ext, std::uint32_t depth) {
    if (r == 0 || ext == 0) throw std::invalid_argument("level and extension degree must be positive");
    auto pp = gf::factor_prime_power(q);
    auto s = std::make_shared<Setting>();
    s->q = q;
    s->p = pp.p;
    s->m = pp.m;
    s->r = r;
    s->fq = gf::GaloisField::make(pp.p, pp.m);
    s->color_field = gf::GaloisField::make(pp.p, pp.m * r);
    s->K = ext == 1 ? s->color_field : gf::GaloisField::make(pp.p, pp.m * r * ext);
    s->fq_to_K = std::make_shared<gf::Embedding>(s->fq, s->K);
    s->color_to_K = std::make_shared<gf::Embedding>(s->color_field, s->K);
    s->uni = make_uniformizer(q, depth == 0 ? r : depth, s->K);
    for (std::uint32_t v = 0; v < s->fq->size(); ++v) s->fq_elems.push_back(s->fq_to_K->apply(s->fq->from_packed(v)));
    return s;
}

std::int64_t parse_color(const std::string& text) {
    if (text == "1") return 0;
    if (text == "g") return 1;
    if (text.size() > 2 && text[0] == 'g' && text[1] == '^') {
        std::size_t used = 0;
        std::int64_t k = std::stoll(text.substr(2), &used);
        if (used + 2 != text.size()) throw std::invalid_argument("bad color: " + text);
        return k;
    }
    throw std::invalid_argument("bad color: " + text);
}

std::string format_color(std::int64_t k) {
    if (k == 0) return "1";
    if (k == 1) return "g";
    return "g^" + std::to_string(k);
}

}  // namespace cmzv
