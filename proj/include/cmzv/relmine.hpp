#pragma once
// Search for F_p-linear relations among monomials of colored multizeta values
// of a fixed total weight, via exact nullspaces of digit matrices.

#include <cstdint>
#include <string>
#include <vector>

#include "cmzv/powersum.hpp"
#include "cmzv/setting.hpp"

namespace cmzv {

/// Product of zeta values: factors are (index, exponent), sorted by index.
struct Monomial {
    std::vector<std::pair<Index, std::uint32_t>> factors;
    std::uint32_t weight() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialBasis {
    std::uint64_t q = 2;
    std::uint32_t r = 1;
    std::uint32_t weight = 1;
    std::uint32_t depth_max = 1;
    bool colored = true;
    std::vector<Monomial> monomials;
};

/// Indices with weight <= w_max and depth <= depth_max, ordered by weight,
/// depth, s and colors. Colors run over F_{q^r}^x when colored, else are 1.
std::vector<Index> enumerate_indices(const Setting& st, std::uint32_t w_max, std::uint32_t depth_max, bool colored = true);

/// All monomials of total weight exactly w; throws past max_size.
MonomialBasis enumerate_monomials(const Setting& st, std::uint32_t w, std::uint32_t depth_max, bool colored = true,
                                  std::size_t max_size = 4000);

std::string format_monomial(const Monomial& m);

/// Value of a monomial through v-exponent prec * (q-1) q^R.
LaurentScalar monomial_value(const Setting& st, const Monomial& m, std::int64_t prec);

struct RelationCandidate {
    std::vector<std::uint32_t> coeffs;  // over the basis, in F_p
    std::int64_t discovery_prec = 0;
    std::int64_t confirmation_prec = 0;
    bool confirmed = false;
};

struct MiningReport {
    std::vector<RelationCandidate> relations;  // confirmed, reduced echelon form
    std::size_t discovered_dim = 0;
    std::size_t confirmed_dim = 0;
    std::size_t unconfirmed = 0;  // discovered_dim - confirmed_dim
    std::size_t digit_rows = 0;
    bool separated = true;  // every monomial nonzero to precision
};

/// Nullspace of the digit matrix at prec, confirmed at 2 prec.
MiningReport mine_relations(const Setting& st, const std::vector<Monomial>& basis, std::int64_t prec);

/// Relations implied by the harmonic product of two factors of a basis
/// monomial, kept when every resulting monomial is in the basis.
std::vector<std::vector<std::uint32_t>> stuffle_relations(const Setting& st, const std::vector<Monomial>& basis);

/// Membership of v in the span of the relations (all over F_p).
bool in_span(const std::vector<RelationCandidate>& rels, const std::vector<std::uint32_t>& v, std::uint32_t p);

struct ScanReport {
    std::size_t basis_size = 0;
    std::size_t relations = 0;
    std::size_t cross_weight_initial = 0;  // at prec
    std::size_t cross_weight_final = 0;    // after rechecking at 2 prec
    bool ok() const { return cross_weight_final == 0; }
};

/// Mines the union of the weight-w1 and weight-w2 bases and counts relations
/// whose support meets both weights.
ScanReport cross_weight_scan(const Setting& st, std::uint32_t w1, std::uint32_t w2, std::uint32_t depth_max, std::int64_t prec,
                             bool colored = true);

}  // namespace cmzv
