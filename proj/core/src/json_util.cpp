#include "json_util.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dynamix::detail {

namespace {

std::size_t line_of(std::string_view text, std::size_t byte_offset) {
  byte_offset = std::min(byte_offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte_offset, '\n'));
}

std::string field_path(std::string_view context, std::string_view key) {
  std::string out(context);
  if (!out.empty()) out += '.';
  out += key;
  return out;
}

}  // namespace

json parse_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string(what) + ": line " + std::to_string(line_of(text, e.byte)) +
                                       ": " + e.what());
  }
}

void require_only_keys(const json& object, std::initializer_list<std::string_view> allowed,
                       std::string_view context) {
  if (!object.is_object()) {
    throw Error(ErrorKind::kParse, std::string(context) + ": expected an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorKind::kParse, field_path(context, key) + ": unknown field");
    }
  }
}

const json& require_field(const json& object, std::string_view key, std::string_view context) {
  auto it = object.find(std::string(key));
  if (it == object.end()) {
    throw Error(ErrorKind::kParse, field_path(context, key) + ": missing field");
  }
  return *it;
}

double get_number(const json& object, std::string_view key, std::string_view context) {
  const json& value = require_field(object, key, context);
  if (!value.is_number()) {
    throw Error(ErrorKind::kParse, field_path(context, key) + ": expected a number");
  }
  double out = value.get<double>();
  if (!std::isfinite(out)) {
    throw Error(ErrorKind::kParse, field_path(context, key) + ": not finite");
  }
  return out;
}

double get_number_or(const json& object, std::string_view key, double fallback, std::string_view context) {
  if (!object.contains(std::string(key))) return fallback;
  return get_number(object, key, context);
}

std::uint64_t get_unsigned(const json& object, std::string_view key, std::string_view context) {
  const json& value = require_field(object, key, context);
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    throw Error(ErrorKind::kParse, field_path(context, key) + ": expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

std::string get_string(const json& object, std::string_view key, std::string_view context) {
  const json& value = require_field(object, key, context);
  if (!value.is_string()) {
    throw Error(ErrorKind::kParse, field_path(context, key) + ": expected a string");
  }
  return value.get<std::string>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buffer.data(), end);
}

}  // namespace dynamix::detail
