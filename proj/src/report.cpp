#include "steklov/report.hpp"

#include <cmath>
#include <cstdio>

namespace steklov {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(std::string& out, const ordered_json& j, int indent,
                int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        out += pad_in;
        append_escaped(out, key);
        out += ": ";
        dump_value(out, value, indent, depth + 1);
        if (++i < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Scalar-only arrays print inline; nested ones get one row per entry.
      bool flat = true;
      for (const auto& v : j)
        if (v.is_structured()) flat = false;
      if (flat) {
        out += '[';
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(out, j[i], indent, depth);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_value(out, j[i], indent, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::string:
      append_escaped(out, j.get_ref<const std::string&>());
      return;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<int64_t>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<uint64_t>());
      return;
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out += format_double(v);
      } else {
        append_escaped(out, format_double(v));  // JSON has no inf/nan
      }
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_value(out, j, indent, 0);
  out += '\n';
  return out;
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 1469598103934665603ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string CsvTable::str() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

ordered_json report_envelope(const std::string& command) {
  ordered_json j;
  j["schema"] = "steklov-report/1";
  j["command"] = command;
  return j;
}

}  // namespace steklov
