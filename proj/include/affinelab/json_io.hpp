#pragma once

#include <string>

#include "json.hpp"

#include "affinelab/catalog.hpp"
#include "affinelab/classify.hpp"
#include "affinelab/moduli.hpp"
#include "affinelab/quasi_einstein.hpp"

namespace affinelab {

using Json = nlohmann::ordered_json;

/// {"gamma": [a, b, c, d, e, f]}
Json to_json(const TypeAConnection& conn);
/// Throws MalformedInput unless the document holds six finite numbers.
TypeAConnection connection_from_json(const Json& doc);
/// Parses "a,b,c,d,e,f".
TypeAConnection connection_from_string(const std::string& text);

Json to_json(const QBasis& basis);
QBasis qbasis_from_json(const Json& doc);

Json to_json(const SymmetricBilinear2& rho);
Json to_json(const LinearMap2& map);
Json to_json(const LinearForm& form);
Json to_json(const FamilyId& id);
Json to_json(const NormalFormResult& nf);
Json to_json(const InvariantReport& report);
Json to_json(const LinearDecision& d);
Json to_json(const AffineDecision& d);
Json to_json(const FlatNeighbor& n);
Json to_json(const KillingBasis& k);
Json to_json(const CatalogEntry& e);

/// Family table with parameter domains, as shipped in data/families.json.
Json families_json();

Json parse_json(const std::string& text);

}  // namespace affinelab
