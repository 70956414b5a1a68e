#include "ehrxqa/sql_engine.hpp"

#include <sqlite3.h>

#include <cctype>

#include "ehrxqa/errors.hpp"

namespace ehrxqa {
namespace {

const char* affinity(ValueKind kind) {
    switch (kind) {
        case ValueKind::Int: return "integer";
        case ValueKind::Float: return "real";
        case ValueKind::Text:
        case ValueKind::TimestampKind:
        case ValueKind::Null: return "text";
    }
    return "text";
}

[[noreturn]] void raise_sqlite(const std::string& sql, const std::string& message) {
    // sqlite reports unresolved names with fixed prefixes; map them onto the
    // store's error contract.
    if (message.find("no such table") != std::string::npos) {
        raise(ErrorCode::UnknownTable, message);
    }
    if (message.find("no such column") != std::string::npos) {
        raise(ErrorCode::UnknownColumn, message);
    }
    raise(ErrorCode::SqlSyntaxError, message + " in: " + sql);
}

}  // namespace

struct SqlEngine::Impl {
    sqlite3* conn = nullptr;

    void exec(const std::string& sql) {
        char* err = nullptr;
        if (sqlite3_exec(conn, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
            std::string message = err ? err : "sqlite error";
            sqlite3_free(err);
            raise_sqlite(sql, message);
        }
    }

    void insert_rows(const Table& table) {
        if (table.row_count() == 0) return;
        std::string sql = "insert into " + table.name() + " values (";
        for (std::size_t i = 0; i < table.column_count(); ++i) {
            sql += i ? ",?" : "?";
        }
        sql += ")";
        sqlite3_stmt* stmt = nullptr;
        if (sqlite3_prepare_v2(conn, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
            raise_sqlite(sql, sqlite3_errmsg(conn));
        }
        exec("begin");
        for (const auto& row : table.rows()) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                int idx = static_cast<int>(c) + 1;
                const Value& v = row[c];
                if (is_null(v)) {
                    sqlite3_bind_null(stmt, idx);
                } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
                    sqlite3_bind_int64(stmt, idx, *i);
                } else if (const auto* d = std::get_if<double>(&v)) {
                    sqlite3_bind_double(stmt, idx, *d);
                } else {
                    const std::string& s = std::get<std::string>(v);
                    sqlite3_bind_text(stmt, idx, s.c_str(), static_cast<int>(s.size()),
                                      SQLITE_TRANSIENT);
                }
            }
            if (sqlite3_step(stmt) != SQLITE_DONE) {
                std::string message = sqlite3_errmsg(conn);
                sqlite3_finalize(stmt);
                raise_sqlite(sql, message);
            }
            sqlite3_reset(stmt);
        }
        exec("commit");
        sqlite3_finalize(stmt);
    }

    void create_table(const Table& table) {
        std::string ddl = "create table " + table.name() + " (";
        for (std::size_t i = 0; i < table.column_count(); ++i) {
            if (i) ddl += ", ";
            ddl += table.columns()[i].name;
            ddl += " ";
            ddl += affinity(table.columns()[i].kind);
        }
        ddl += ")";
        exec(ddl);
        insert_rows(table);
    }
};

SqlEngine::SqlEngine(const EhrDatabase& db) : impl_(std::make_unique<Impl>()) {
    if (sqlite3_open(":memory:", &impl_->conn) != SQLITE_OK) {
        raise(ErrorCode::Internal, "cannot open in-memory sqlite");
    }
    for (const auto& t : db.tables()) {
        impl_->create_table(t);
    }
    // Lookup indexes; semantics-neutral.
    for (const auto& t : db.tables()) {
        for (const char* key : {"subject_id", "hadm_id", "study_id", "itemid", "icd_code"}) {
            if (t.column_index(key) >= 0) {
                impl_->exec("create index idx_" + t.name() + "_" + key + " on " + t.name() + "(" +
                            key + ")");
            }
        }
    }
}

SqlEngine::~SqlEngine() {
    if (impl_ && impl_->conn) sqlite3_close(impl_->conn);
}

void SqlEngine::attach_table(const Table& table) {
    std::lock_guard<std::mutex> lock(mutex_);
    impl_->exec("drop table if exists " + table.name());
    impl_->create_table(table);
    if (table.column_index("study_id") >= 0) {
        impl_->exec("create index if not exists idx_" + table.name() + "_study_id on " +
                    table.name() + "(study_id)");
    }
}

void SqlEngine::drop_table(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    impl_->exec("drop table if exists " + name);
}

std::vector<std::string> SqlEngine::table_names() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::string> names;
    sqlite3_stmt* stmt = nullptr;
    const char* sql = "select name from sqlite_master where type = 'table' order by name";
    if (sqlite3_prepare_v2(impl_->conn, sql, -1, &stmt, nullptr) != SQLITE_OK) return names;
    while (sqlite3_step(stmt) == SQLITE_ROW) {
        names.emplace_back(reinterpret_cast<const char*>(sqlite3_column_text(stmt, 0)));
    }
    sqlite3_finalize(stmt);
    return names;
}

Table SqlEngine::execute(const std::string& sql) {
    std::lock_guard<std::mutex> lock(mutex_);
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(impl_->conn, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
        raise_sqlite(sql, sqlite3_errmsg(impl_->conn));
    }
    int ncols = sqlite3_column_count(stmt);
    std::vector<Column> columns;
    columns.reserve(static_cast<std::size_t>(ncols));
    for (int i = 0; i < ncols; ++i) {
        const char* name = sqlite3_column_name(stmt, i);
        columns.push_back({name ? name : ("c" + std::to_string(i)), ValueKind::Text});
    }
    Table result("result", columns);
    int rc;
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
        Row row;
        row.reserve(static_cast<std::size_t>(ncols));
        for (int i = 0; i < ncols; ++i) {
            switch (sqlite3_column_type(stmt, i)) {
                case SQLITE_INTEGER:
                    row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(stmt, i)));
                    break;
                case SQLITE_FLOAT: row.emplace_back(sqlite3_column_double(stmt, i)); break;
                case SQLITE_NULL: row.emplace_back(Value{}); break;
                default:
                    row.emplace_back(std::string(
                        reinterpret_cast<const char*>(sqlite3_column_text(stmt, i))));
            }
        }
        result.add_row(std::move(row));
    }
    if (rc != SQLITE_DONE) {
        std::string message = sqlite3_errmsg(impl_->conn);
        sqlite3_finalize(stmt);
        raise_sqlite(sql, message);
    }
    sqlite3_finalize(stmt);
    return result;
}

bool contains_func_vqa(const std::string& sql) {
    std::string lowered;
    lowered.reserve(sql.size());
    bool in_string = false;
    for (std::size_t i = 0; i < sql.size(); ++i) {
        char c = sql[i];
        if (in_string) {
            if (c == '\'') in_string = false;
            lowered.push_back(' ');
        } else if (c == '\'') {
            in_string = true;
            lowered.push_back(' ');
        } else {
            lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return lowered.find("func_vqa") != std::string::npos;
}

Table execute_sql(SqlEngine& engine, const std::string& sql) {
    if (contains_func_vqa(sql)) {
        raise(ErrorCode::SqlSyntaxError, "FUNC_VQA is not valid in the standard-SQL path");
    }
    return engine.execute(sql);
}

}  // namespace ehrxqa
