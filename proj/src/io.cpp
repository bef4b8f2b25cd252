#include "fluxring/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fluxring/types.hpp"

namespace fluxring::io {

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move temporary file onto " + path);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string to_csv(const Table& table) {
  std::string out;
  for (const auto& [key, value] : table.meta) out += "# " + key + ": " + value + "\n";
  for (std::size_t c = 0; c < table.column_names.size(); ++c) {
    if (c) out += ",";
    out += table.column_names[c];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += row[c];
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  auto& meta = doc["meta"];
  for (const auto& [key, value] : table.meta) meta[key] = value;
  auto& columns = doc["columns"];
  for (std::size_t c = 0; c < table.column_names.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      const std::string& cell = row[c];
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      long long integer = 0;
      double value = 0.0;
      if (auto res = std::from_chars(first, last, integer); res.ec == std::errc{} && res.ptr == last)
        col.push_back(integer);
      else if (auto resd = std::from_chars(first, last, value);
               resd.ec == std::errc{} && resd.ptr == last)
        col.push_back(value);
      else
        col.push_back(cell);
    }
    columns[table.column_names[c]] = std::move(col);
  }
  return doc.dump(2) + "\n";
}

}  // namespace fluxring::io
