#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "panfis/model.hpp"

namespace panfis {

inline constexpr std::int64_t kModelFormatVersion = 1;

// Model documents are JSON with top-level keys `format_version`, `config`,
// `samples_seen`, optional `input_range`, and `rules`. Numbers are emitted
// with shortest round-trip precision, so load(save(m)) == m bit-for-bit.
std::string save_model(const Model& model);
void save_model(const Model& model, const std::filesystem::path& path);

// Throws std::runtime_error on malformed documents and std::invalid_argument
// on invariant violations (non-SPD matrices, dimension mismatches, ...).
Model load_model(const std::string& document);
Model load_model_file(const std::filesystem::path& path);

}  // namespace panfis
