#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cgh/chain_complex.hpp"

namespace cgh::cache {

/// File name for a cache key: sanitized key, convention version, extension.
std::string file_name(const std::string& key);

/// Loads a cached complex; empty when absent, unreadable, or written under
/// a different orientation convention.
std::optional<ChainComplex> load(const std::filesystem::path& dir,
                                 const std::string& key);

/// Stores the complex under the key, writing to a temporary file first and
/// renaming it into place so concurrent readers never see partial data.
void store(const std::filesystem::path& dir, const std::string& key,
           const ChainComplex& complex);

}  // namespace cgh::cache
