#pragma once

#include <map>
#include <string>
#include <vector>

#include "ehrxqa/table.hpp"

namespace ehrxqa {

/// Schema manifest: the ordered table/column layout the store ingests and
/// serializes. Text format, one table per line:
///   table_name: column:kind, column:kind, ...
struct SchemaManifest {
    struct TableSpec {
        std::string name;
        std::vector<Column> columns;
    };

    std::vector<TableSpec> tables;

    const TableSpec* find(const std::string& name) const;

    static SchemaManifest parse(const std::string& text);
    static SchemaManifest load(const std::string& path);
    std::string to_text() const;

    /// The 18-table layout used throughout: 17 clinical tables plus the
    /// image reference table tb_cxr.
    static SchemaManifest standard();
};

}  // namespace ehrxqa
