#pragma once

// Brute-force oracle harness: a catalog of executable checks for the
// intersection lemmas, dimension degree fits, extension round trips, triangle
// completions, classifier soundness and the non-isomorphism signatures, each
// producing a machine-readable pass/fail report with a deterministic first
// counterexample.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grex/chains.hpp"
#include "grex/classify_maps.hpp"
#include "grex/json_io.hpp"

namespace grex {

enum class PropertyId {
    two_possib_i,
    two_possib_ii,
    two_possib_iii,
    two_possib_iv,
    intersect_dim1_i,
    intersect_dim1_ii,
    intersect_dim1_iii,
    bkn_families_sound,
    bkn_sympl_families_sound,
    dim_degree,
    ext_roundtrip,
    triangle,
    compose_assoc,
    thm1_soundness,
    point_line_config,
    signature_separation,
    labeling_fixed_chain,
};

const char* property_id_name(PropertyId id);
std::optional<PropertyId> parse_property_id(const std::string& s);
const std::vector<PropertyId>& all_property_ids();

struct CheckParams {
    std::optional<GrassDesc<Fp>> desc;
    std::vector<Int> primes;
    std::size_t count = 0;       // instance count for the seeded suites
    std::uint64_t seed = 2027;   // pinned default
    BigInt cap = BigInt(2000000);
    int jobs = 1;
};

struct Report {
    PropertyId id;
    Json params;  // canonical parameter echo
    bool pass = false;
    std::string counterexample;  // canonical JSON payload, empty when passing
    std::vector<std::pair<std::string, std::int64_t>> counts;
    double wall_ms = 0.0;

    /// stable serialization; timings only on request
    Json to_json(bool with_timings = false) const;
};

Report check(PropertyId id, const CheckParams& params);

/// Point count of a standard-form descriptor shape over GF(q).
BigInt point_count(GrassKind kind, std::size_t k, std::size_t dim, Int q);

/// Degree of the polynomial interpolating q -> point count through the given
/// primes; needs at least dimension + 2 sample points.
std::size_t fit_degree(GrassKind kind, std::size_t k, std::size_t dim, const std::vector<Int>& primes);

struct ManifestEntry {
    PropertyId id;
    CheckParams params;
};

/// The pinned desk-scale parameter set: one deterministic command runs it all.
std::vector<ManifestEntry> default_manifest();

std::vector<Report> run_suite(int jobs);

}  // namespace grex
