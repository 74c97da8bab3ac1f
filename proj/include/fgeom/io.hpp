#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fgeom/axioms.hpp"
#include "fgeom/ovals.hpp"
#include "fgeom/reconstruct.hpp"

namespace fgeom::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

json pt_to_json(const Pt& p);
Pt pt_from_json(const json& j);
json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, int ambient);

json field_to_json(const Fq2Config& cfg);
Fq2Config field_from_json(const json& j);

json config_to_json(const Configuration& c);
Configuration config_from_json(const json& j);

json axiom_report_to_json(const AxiomReport& r);
json spread_check_to_json(const SpreadConditionReport& r);

json spread_to_json(const Spread& s);
Spread spread_from_json(const json& j);

/// Reconstruction output embeds its source configuration and the original
/// C-lines so the derivation step needs only this one file.
json recon_to_json(const ReconstructionResult& r, const Configuration& source,
                   const std::vector<Subspace>& c_lines);

struct ReconFile {
  Configuration source;
  ReconstructionResult result;
  std::vector<Subspace> c_lines;
};
ReconFile recon_from_json(const json& j);

/// FNV-1a hex digest of the serialized value.
std::string digest(const json& j);

/// Wraps a geometry payload as {"schema", "kind", "geometry", "manifest"};
/// the manifest gains a hash over everything except timing fields.
json wrap_with_manifest(const std::string& kind, json geometry, json manifest);

/// Atomic write (temp file + rename), trailing newline.
void write_file(const std::string& path, const json& j);

/// Parse a JSON file; throws FormatError on I/O or syntax problems.
json load_file(const std::string& path);

/// Extracts and validates the geometry payload of a wrapped file.
json unwrap(const json& file, const std::string& expected_kind);

}  // namespace fgeom::io
