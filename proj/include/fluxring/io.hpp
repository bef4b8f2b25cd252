#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fluxring::io {

/// Shortest-of-12-significant-digits rendering via std::to_chars; locale
/// independent, bit-stable for equal inputs.
std::string format_double(double v);

/// Write content to path atomically (temp file in the same directory, then
/// rename). Throws IoError on any failure.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

using MetaList = std::vector<std::pair<std::string, std::string>>;

/// A column-oriented table plus ordered metadata, the common shape of every
/// artifact this tool emits.
struct Table {
  MetaList meta;
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> rows;  // pre-formatted cells
};

/// CSV with `# key: value` comment lines, a header row, and no locale
/// dependence.
std::string to_csv(const Table& table);

/// JSON mirror: {"meta": {...}, "columns": {name: [...], ...}}. Cells that
/// parse as numbers are emitted as numbers.
std::string to_json(const Table& table);

}  // namespace fluxring::io
