#pragma once

// Self-describing result documents. Key order is fixed and the content hash
// is SHA-256 over the compact dump of everything except the hash itself, so
// identical inputs give byte-identical output.

#include "mapstab/errors.hpp"
#include "mapstab/model_spec.hpp"
#include "mapstab/stability.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace mapstab {

inline constexpr std::string_view engine_version = "0.1.0";

std::string sha256_hex(std::string_view data);

nlohmann::ordered_json table_json(const HomotopyTable& table);

nlohmann::ordered_json table_document(const ModelSpec& spec, const Component& n, int window, bool based,
                                      const HomotopyTable& table);

nlohmann::ordered_json certificate_document(const ModelSpec& spec, const StabilityCertificate& cert);

nlohmann::ordered_json classification_document(const ModelSpec& spec, const std::vector<Component>& components,
                                               int window, const Classification& classification);

nlohmann::ordered_json error_document(ErrorCode code, const std::string& message);

/// Appends "contentHash" and returns the pretty-printed document with a
/// trailing newline.
std::string finalize_document(nlohmann::ordered_json document);

/// Plain-text rendering of a finalized document.
std::string render_text(const nlohmann::ordered_json& document);

}  // namespace mapstab
