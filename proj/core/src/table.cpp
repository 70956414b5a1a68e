#include "ehrxqa/table.hpp"

#include "ehrxqa/rng.hpp"

namespace ehrxqa {

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

int Table::require_column(const std::string& name) const {
    int idx = column_index(name);
    if (idx < 0) raise(ErrorCode::UnknownColumn, name_ + "." + name);
    return idx;
}

void Table::add_row(Row row) {
    if (row.size() != columns_.size()) {
        raise(ErrorCode::ColumnMismatch,
              name_ + ": row width " + std::to_string(row.size()) + " vs " +
                  std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(row));
}

void Table::check_invariants() const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != columns_.size()) {
            raise(ErrorCode::ColumnMismatch, name_ + ": row " + std::to_string(r));
        }
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (columns_[c].kind != ValueKind::TimestampKind) continue;
            const Value& v = rows_[r][c];
            if (is_null(v)) continue;
            const auto* text = std::get_if<std::string>(&v);
            if (!text || !Timestamp::parse(*text)) {
                raise(ErrorCode::TypeCoercionFailure,
                      name_ + "." + columns_[c].name + " row " + std::to_string(r));
            }
        }
    }
}

const char* value_kind_name(ValueKind kind) {
    switch (kind) {
        case ValueKind::Null: return "null";
        case ValueKind::Int: return "int";
        case ValueKind::Float: return "float";
        case ValueKind::Text: return "text";
        case ValueKind::TimestampKind: return "timestamp";
    }
    return "text";
}

ValueKind value_kind_from_name(const std::string& name) {
    if (name == "int") return ValueKind::Int;
    if (name == "float") return ValueKind::Float;
    if (name == "text") return ValueKind::Text;
    if (name == "timestamp") return ValueKind::TimestampKind;
    if (name == "null") return ValueKind::Null;
    raise(ErrorCode::TypeCoercionFailure, "unknown value kind '" + name + "'");
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ehrxqa
