#pragma once

// Dataset JSON:
//   {"dimension": D, "points": [{"id": 1, "coords": ["1/2", "3"], "color": 0, "prob": "1/2"}, ...]}
// Coordinates and probabilities are rational strings; plain JSON integers
// are accepted on input too.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dominion/dataset.hpp"

namespace dominion {

nlohmann::json dataset_to_json(const Dataset& ds);

/// Shape errors raise ValidationError with code "bad_json"; the result is
/// not validated further.
Dataset dataset_from_json(const nlohmann::json& j);

/// Canonical text: two-space indent, trailing newline.
std::string emit_dataset(const Dataset& ds);
Dataset parse_dataset(const std::string& text);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const Dataset& ds);

/// 64-bit FNV-1a over the compact canonical JSON, as 16 hex digits.
std::string dataset_digest(const Dataset& ds);

}  // namespace dominion
