#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dynamix/error.hpp"

namespace dynamix::detail {

using json = nlohmann::ordered_json;

/// Parses `text`, reporting the line of a syntax error.
json parse_document(std::string_view text, std::string_view what);

/// Rejects any key not listed in `allowed`.
void require_only_keys(const json& object, std::initializer_list<std::string_view> allowed,
                       std::string_view context);

const json& require_field(const json& object, std::string_view key, std::string_view context);

double get_number(const json& object, std::string_view key, std::string_view context);
double get_number_or(const json& object, std::string_view key, double fallback, std::string_view context);
std::uint64_t get_unsigned(const json& object, std::string_view key, std::string_view context);
std::string get_string(const json& object, std::string_view key, std::string_view context);

std::string read_file(const std::string& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace dynamix::detail
