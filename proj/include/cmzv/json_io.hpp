#pragma once
// JSON and text forms of the library's values and reports (schemas in
// docs/formats.md).

#include <string>

#include "json.hpp"

#include "cmzv/powersum.hpp"
#include "cmzv/relmine.hpp"
#include "cmzv/stuffle.hpp"
#include "cmzv/tmotive.hpp"

namespace cmzv::io {

using json = nlohmann::ordered_json;

/// Field element as its F_p coefficient vector (ascending powers of x).
json elem_to_json(const gf::GaloisField& K, gf::Elem x);
gf::Elem elem_from_json(const gf::GaloisField& K, const json& j);

/// {"q":..,"depth":..,"field":{..},"terms":[[e,[c...]],...],"prec":P|null}; the
/// header is left out when with_header is false.
json to_json(const LaurentScalar& x, bool with_header = true);
LaurentScalar laurent_from_json(const json& j);
/// Same, reusing an existing uniformizer (checked against the JSON header).
LaurentScalar laurent_from_json(const json& j, const SpecPtr& spec);

/// 1/theta expansion with the leading theta-degree, e.g. "theta^0 * (1 + 2 theta^-2 + O(theta^-41))".
std::string to_text(const LaurentScalar& x);

json to_json(const Setting& st, const RatFuncExt& f);
json to_json(const TateSeries& f);
json to_json(const ATPoly& h);

json to_json(const Relation& rel);
Relation relation_from_json(const Setting& st, const json& j);
std::string to_text(const Relation& rel);

/// "zeta(1)^2 * zeta(2,1:g,1)" back to a monomial.
Monomial parse_monomial(const std::string& text);
json to_json(const RelationCandidate& c, const std::vector<Monomial>& basis);
/// Reads coeffs and the precision fields; "support" is informational.
RelationCandidate candidate_from_json(const json& j);

json to_json(const TrivReport& rep);
json to_json(const ScanReport& rep);

}  // namespace cmzv::io
