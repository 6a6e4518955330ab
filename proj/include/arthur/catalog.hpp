#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arthur/linalg.hpp"
#include "arthur/root_datum.hpp"

namespace arthur {

struct DatumConfig {
    std::string name;
    RawDatum raw;
    std::optional<IntVec> lambda_B;
    std::optional<RatVec> gamma_u;
    std::optional<RatVec> gamma_s;
    std::optional<std::vector<int>> borel;
    long long weyl_cap = kDefaultWeylCap;
    double tol = 1e-9;
};

// Capability flags are recomputed from the datum at load time.
struct CatalogEntry {
    DatumConfig config;
    bool has_minus_one_in_wl = false;        // -1 in the real-root Weyl group on a_M/a_G
    bool has_discrete_series_torus = false;  // the torus is elliptic modulo the split center
    bool prop1_eligible = false;             // -1 in the full Weyl group of the root span
};

CatalogEntry make_entry(DatumConfig config);

// Built-in data: split, swap and compact involutions on the small classical
// and exceptional systems, generated from simple root/coroot pairs.
const std::vector<CatalogEntry>& builtin_catalog();

// Lookup by entry name or abstract-system alias (A1, B2, C2, G2, B3, D4, F4,
// A1xA1, A2, GL2). Null when unknown.
const CatalogEntry* find_entry(const std::string& name);

// Config ingestion. ParseError for malformed JSON, ValidationError for
// structural problems (the datum itself is validated on construction).
DatumConfig load_config_text(const std::string& text);
DatumConfig load_config_file(const std::string& path);

// Full root/coroot closure from simple pairs, sorted lexicographically.
RawDatum generate_from_simples(int rank, const std::vector<IntVec>& simple_roots,
                               const std::vector<IntVec>& simple_coroots,
                               const std::vector<IntVec>& sigma);

}  // namespace arthur
