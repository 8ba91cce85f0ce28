#pragma once

// JSON (de)serialization for every externally visible object. Keys keep
// insertion order so emitted documents are bit-stable; readers report the
// offending JSON path on malformed input.

#include <string>

#include "json.hpp"

#include "grex/chains.hpp"
#include "grex/classify_maps.hpp"
#include "grex/embeddings.hpp"

namespace grex {

using Json = nlohmann::ordered_json;

struct SchemaError : Error {
    std::string path;
    SchemaError(const std::string& msg, std::string at)
        : Error(msg + " at " + at), path(std::move(at)) {}
};

// scalars ------------------------------------------------------------------

inline Json to_json(const Fp& x) { return Json(x.value()); }
inline Json to_json(const Rat& x) { return Json(x.str()); }

Fp fp_from_json(const Json& j, Int p, const std::string& path);
Rat rat_from_json(const Json& j, const std::string& path);

Json to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j, const std::string& path);

// matrices and subspaces ----------------------------------------------------

template <class K>
Json to_json(const Matrix<K>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix<Fp> matrix_fp_from_json(const Json& j, Int p, const std::string& path);
Matrix<Rat> matrix_rat_from_json(const Json& j, const std::string& path);

template <class K>
Json to_json(const Subspace<K>& s) {
    return to_json(s.basis());
}

Subspace<Fp> subspace_from_json(const Json& j, Int p, std::size_t ambient, const std::string& path);

// descriptors ----------------------------------------------------------------

Json to_json(const GrassDesc<Fp>& d);
Json to_json(const GrassDesc<Rat>& d);
GrassDesc<Fp> desc_fp_from_json(const Json& j, const std::string& path);
FieldSpec desc_field(const Json& j, const std::string& path);

// families -------------------------------------------------------------------

Json to_json(const GrassDesc<Fp>& d, const FamilyMember& m, bool with_points);
std::pair<FamilyTag, FamilyDatum> family_datum_from_json(const GrassDesc<Fp>& d, const Json& j,
                                                         const std::string& path);
FamilyTag family_tag_from_string(const std::string& s, const std::string& path);

// extensions and point maps ---------------------------------------------------

Json to_json(const StdExtDatum<Fp>& e);
Json to_json(const IsoExtDatum<Fp>& e);
Json to_json(const CombinationDatum<Fp>& e);
Json to_json(const Extension<Fp>& e);
Extension<Fp> extension_from_json(const Json& j, const std::string& path);

Json to_json(const PointMap& m);
PointMap point_map_from_json(const Json& j, const std::string& path);

// chains -----------------------------------------------------------------------

Json to_json(const ChainSpec& c);
ChainSpec chain_from_json(const Json& j, const std::string& path);

// classification results ---------------------------------------------------------

Json to_json(const Classification& c);

}  // namespace grex
