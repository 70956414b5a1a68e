#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ehrxqa/schema.hpp"
#include "ehrxqa/table.hpp"
#include "ehrxqa/timestamp.hpp"

namespace ehrxqa {

enum class CohortTag { Silver, Gold, Custom };

const char* cohort_tag_name(CohortTag tag);
CohortTag cohort_tag_from_name(const std::string& name);

/// Relational EHR database pinned to a "current time". Immutable once built;
/// concurrent readers are safe.
class EhrDatabase {
  public:
    EhrDatabase() = default;
    EhrDatabase(SchemaManifest schema, Timestamp current_time, CohortTag tag);

    const SchemaManifest& schema() const { return schema_; }
    Timestamp current_time() const { return current_time_; }
    CohortTag cohort_tag() const { return cohort_tag_; }

    bool has_table(const std::string& name) const;
    const Table& table(const std::string& name) const;
    Table& table(const std::string& name);
    const std::vector<Table>& tables() const { return tables_; }

    std::vector<std::int64_t> patient_ids() const;

    /// Full invariant suite: schema tables present with manifest columns,
    /// foreign keys resolve, study ids unique, no timestamp past current time.
    void check_invariants() const;

    /// Snapshot directory: one csv per table, schema.txt, metadata.txt.
    void save(const std::string& dir) const;
    static EhrDatabase load(const std::string& dir);

    /// Canonical byte serialization (deterministic; used for equality checks).
    std::string fingerprint_text() const;

  private:
    SchemaManifest schema_;
    std::vector<Table> tables_;
    std::map<std::string, std::size_t> index_;
    Timestamp current_time_;
    CohortTag cohort_tag_ = CohortTag::Custom;
};

/// Parse one csv cell per declared kind; "" is null. Throws
/// TypeCoercionFailure naming table.column and row index.
Value coerce_cell(const std::string& text, ValueKind kind, const std::string& table,
                  const std::string& column, std::size_t row_index);

std::string cell_to_csv(const Value& v);

}  // namespace ehrxqa
