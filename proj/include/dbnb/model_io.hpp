#pragma once

#include "dbnb/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace dbnb {

/// Version written into every model file; readers reject other versions.
inline constexpr int model_format_version = 1;

/// Versioned JSON document. Counts are written as integers and weights, tag
/// bounds and bin edges as shortest round-trip decimals, so load(save(m)) == m.
std::string serialize_model(const Model& model);
Model deserialize_model(std::string_view text);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace dbnb
