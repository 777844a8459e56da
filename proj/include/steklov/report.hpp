#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace steklov {

using ordered_json = nlohmann::ordered_json;

// %.17g — every double round-trips; non-finite values print as inf/-inf/nan.
std::string format_double(double v);

// Serializes an ordered_json document with all doubles in 17-significant-
// digit form (non-finite ones as strings), keys in insertion order.  Reports
// stay byte-stable for fixed inputs.
std::string dump_json(const ordered_json& j, int indent = 2);

uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) {
    rows.push_back(std::move(cells));
  }
  std::string str() const;
};

// Shared envelope: {"schema": "steklov-report/1", "command": ..., ...}.
ordered_json report_envelope(const std::string& command);

}  // namespace steklov
