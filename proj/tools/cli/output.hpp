#pragma once

#include <iosfwd>
#include <string>

namespace maxstop::cli {

/// Environment variable naming the directory for relative output paths.
inline constexpr const char* output_dir_env = "MAXSTOP_OUTPUT_DIR";

/// Resolves `path` against $MAXSTOP_OUTPUT_DIR when it is relative.
[[nodiscard]] std::string resolve_output_path(const std::string& path);

/// Writes through a sibling temporary file and a rename, so readers never see
/// a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

/// Empty path means `out`.
void emit(std::ostream& out, const std::string& path, const std::string& content);

}  // namespace maxstop::cli
