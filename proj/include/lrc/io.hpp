#pragma once

// JSON encodings for fields, elements, places and codes, and atomic file output.

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrc/codes.hpp"
#include "lrc/galois.hpp"
#include "lrc/tower.hpp"

namespace lrc::io {

using nlohmann::json;

json field_to_json(const galois::Field& f);
/// Rebuilds the field and checks that the stored modulus matches.
std::shared_ptr<const galois::Field> field_from_json(const json& j);

json element_to_json(const galois::Field& f, galois::Elem x);  // coefficient vector
galois::Elem element_from_json(const galois::Field& f, const json& j);

json places_to_json(const galois::Field& f, std::span<const tower::TowerPlace> places);
json orbits_to_json(const std::vector<std::vector<std::size_t>>& orbits);

json code_to_json(const codes::LinearCode& code);
/// Throws FormatError on malformed input, and whatever validate() throws.
codes::LinearCode code_from_json(const json& j);

/// Sorted keys, no whitespace.
std::string canonical(const json& j);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace lrc::io
