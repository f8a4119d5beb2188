#pragma once

// JSON and Graphviz DOT encodings of the library types. Rationals are strings
// "p/q", subsets are strings "1,2,4", tropical -∞ is the string "-inf".
// Object keys keep insertion (colex / ground) order so output is reproducible.

#include <string>

#include "json.hpp"
#include "lxkit/linespace.hpp"
#include "lxkit/matroidcore.hpp"
#include "lxkit/polyrel.hpp"
#include "lxkit/tropfan.hpp"

namespace lxkit::io {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const foundation::Rational& r);
/// Accepts an integer or a "p/q" string.
foundation::Rational rational_from_json(const Json& j);

Json to_json(const foundation::QMatrix& m);
foundation::QMatrix matrix_from_json(const Json& j);

Json to_json(const foundation::PlueckerVector& q);

/// {"n":5,"d":2,"basis":[[...]]} or {"plucker":{"1,2,3":"1",...}} with n, d
/// optional for Pluecker input (inferred from the keys).
linespace::SubspaceInput subspace_from_json(const Json& j);

Json to_json(const linespace::UMatrix& u);
Json to_json(const linespace::VMatrix& v);

/// {"ground": [...], "rank": r, "bases": [[...], ...]}
Json to_json(const matroidcore::Matroid& m);
matroidcore::Matroid matroid_from_json(const Json& j);

Json to_json(const polyrel::SparsePoly& p);
polyrel::SparsePoly poly_from_json(const Json& j);

Json to_json(const polyrel::SaturationCertificate& c);
polyrel::SaturationCertificate certificate_from_json(const Json& j);

Json to_json(const tropfan::TropValue& v);
tropfan::TropValue trop_from_json(const Json& j);
/// {"n":4,"m":2,"values":{"1,2":"-1",...}}; absent coordinates are -∞.
Json to_json(const tropfan::TropPluecker& p);
tropfan::TropPluecker trop_pluecker_from_json(const Json& j);

Json to_json(const tropfan::FanChart& chart);

std::string lattice_dot(const matroidcore::Matroid& m, const matroidcore::FlatLattice& lattice);
std::string graph_dot(const tropfan::Graph& g, const std::string& name);

}  // namespace lxkit::io
