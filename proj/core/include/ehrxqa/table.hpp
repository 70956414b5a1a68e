#pragma once

#include <string>
#include <vector>

#include "ehrxqa/errors.hpp"
#include "ehrxqa/value.hpp"

namespace ehrxqa {

struct Column {
    std::string name;
    ValueKind kind = ValueKind::Text;
};

using Row = std::vector<Value>;

/// Named relation: ordered typed columns plus row tuples. Construction-time
/// checks enforce the row-width invariant; timestamp cells must be canonical.
class Table {
  public:
    Table() = default;
    Table(std::string name, std::vector<Column> columns)
        : name_(std::move(name)), columns_(std::move(columns)) {}

    const std::string& name() const { return name_; }
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::vector<Row>& rows() { return rows_; }

    std::size_t column_count() const { return columns_.size(); }
    std::size_t row_count() const { return rows_.size(); }

    int column_index(const std::string& name) const;  // -1 when absent
    int require_column(const std::string& name) const;

    void add_row(Row row);

    const Value& at(std::size_t row, const std::string& column) const {
        return rows_[row][static_cast<std::size_t>(require_column(column))];
    }

    /// Structural check: every row has one value per column, timestamp cells
    /// parse as canonical datetimes.
    void check_invariants() const;

  private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<Row> rows_;
};

}  // namespace ehrxqa
