#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ehrxqa/timestamp.hpp"

namespace ehrxqa {

/// Column value kinds. Timestamps are carried as canonical text
/// ("YYYY-MM-DD HH:MM:SS") so that lexicographic order equals time order.
enum class ValueKind { Null, Int, Float, Text, TimestampKind };

/// One table cell. Timestamp cells are stored as Text holding canonical form.
using Value = std::variant<std::monostate, std::int64_t, double, std::string>;

inline bool is_null(const Value& v) { return std::holds_alternative<std::monostate>(v); }

inline std::string value_to_text(const Value& v) {
    if (std::holds_alternative<std::monostate>(v)) return "";
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.10g", *d);
        return buf;
    }
    return std::get<std::string>(v);
}

const char* value_kind_name(ValueKind kind);
ValueKind value_kind_from_name(const std::string& name);

}  // namespace ehrxqa
