#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vqe::jsonutil {

// Scans `text` for the first balanced JSON value opening with `opener`
// ('{' or '['), skipping string literals and escapes. Candidates that fail
// nlohmann parsing are skipped and the scan continues from the next opener,
// so prose containing a stray bracket does not mask a later valid payload.
std::optional<nlohmann::json> extract_first(const std::string& text, char opener);

// First balanced JSON object anywhere in the text.
std::optional<nlohmann::json> extract_first_object(const std::string& text);

// First balanced JSON array anywhere in the text.
std::optional<nlohmann::json> extract_first_array(const std::string& text);

std::string base64_encode(const std::uint8_t* data, std::size_t len);
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace vqe::jsonutil
