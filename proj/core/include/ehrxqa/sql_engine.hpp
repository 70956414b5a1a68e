#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ehrxqa/database.hpp"
#include "ehrxqa/table.hpp"

namespace ehrxqa {

/// Standard-SQL evaluation for one database: the EhrDatabase is materialized
/// into an in-memory sqlite connection once, then queries run against it.
/// Extra relations (answer-sheet tables, executor bindings) can be attached.
///
/// A connection serves one query at a time; a mutex serializes callers, so a
/// shared engine is safe for concurrent read-only use.
class SqlEngine {
  public:
    explicit SqlEngine(const EhrDatabase& db);
    ~SqlEngine();

    SqlEngine(const SqlEngine&) = delete;
    SqlEngine& operator=(const SqlEngine&) = delete;

    /// Runs one SELECT statement and materializes the result.
    Table execute(const std::string& sql);

    /// Registers an additional relation (e.g. a materialized answer sheet or
    /// a VQA result binding). Replaces any previous table of the same name.
    void attach_table(const Table& table);
    void drop_table(const std::string& name);

    /// Table names visible to queries on this engine.
    std::vector<std::string> table_names() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    mutable std::mutex mutex_;
};

/// Standard-SQL entry point per the store contract: rejects the VQA
/// extension token, parses in-dialect, then evaluates.
Table execute_sql(SqlEngine& engine, const std::string& sql);

/// Case-insensitive scan for the VQA extension keyword outside string
/// literals.
bool contains_func_vqa(const std::string& sql);

}  // namespace ehrxqa
