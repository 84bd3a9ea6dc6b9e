#include "vqe/core/json_util.hpp"

#include <array>

namespace vqe::jsonutil {

namespace {

// Returns the index one past the balanced value starting at `start`,
// or npos when the text ends before the delimiters close.
std::size_t balanced_end(const std::string& text, std::size_t start) {
    const char opener = text[start];
    const char closer = (opener == '{') ? '}' : ']';
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == opener) {
            ++depth;
        } else if (c == closer) {
            --depth;
            if (depth == 0) return i + 1;
        }
    }
    return std::string::npos;
}

}  // namespace

std::optional<nlohmann::json> extract_first(const std::string& text, char opener) {
    for (std::size_t pos = text.find(opener); pos != std::string::npos;
         pos = text.find(opener, pos + 1)) {
        const std::size_t end = balanced_end(text, pos);
        if (end == std::string::npos) continue;
        auto parsed = nlohmann::json::parse(text.substr(pos, end - pos), nullptr, false);
        if (!parsed.is_discarded()) return parsed;
    }
    return std::nullopt;
}

std::optional<nlohmann::json> extract_first_object(const std::string& text) {
    return extract_first(text, '{');
}

std::optional<nlohmann::json> extract_first_array(const std::string& text) {
    return extract_first(text, '[');
}

static constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::uint8_t* data, std::size_t len) {
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (std::size_t i = 0; i < len; i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        if (i + 1 < len) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (i + 2 < len) chunk |= static_cast<std::uint32_t>(data[i + 2]);
        out.push_back(kB64Alphabet[(chunk >> 18) & 0x3f]);
        out.push_back(kB64Alphabet[(chunk >> 12) & 0x3f]);
        out.push_back(i + 1 < len ? kB64Alphabet[(chunk >> 6) & 0x3f] : '=');
        out.push_back(i + 2 < len ? kB64Alphabet[chunk & 0x3f] : '=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    std::array<int, 256> lut{};
    lut.fill(-1);
    for (int i = 0; i < 64; ++i) lut[static_cast<unsigned char>(kB64Alphabet[i])] = i;

    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t buffer = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = lut[static_cast<unsigned char>(c)];
        if (v < 0) continue;
        buffer = (buffer << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((buffer >> bits) & 0xff));
        }
    }
    return out;
}

}  // namespace vqe::jsonutil
