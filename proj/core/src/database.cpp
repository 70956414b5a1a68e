#include "ehrxqa/database.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "ehrxqa/csv.hpp"
#include "ehrxqa/errors.hpp"

namespace fs = std::filesystem;

namespace ehrxqa {

const char* cohort_tag_name(CohortTag tag) {
    switch (tag) {
        case CohortTag::Silver: return "silver";
        case CohortTag::Gold: return "gold";
        case CohortTag::Custom: return "custom";
    }
    return "custom";
}

CohortTag cohort_tag_from_name(const std::string& name) {
    if (name == "silver") return CohortTag::Silver;
    if (name == "gold") return CohortTag::Gold;
    return CohortTag::Custom;
}

EhrDatabase::EhrDatabase(SchemaManifest schema, Timestamp current_time, CohortTag tag)
    : schema_(std::move(schema)), current_time_(current_time), cohort_tag_(tag) {
    for (const auto& spec : schema_.tables) {
        index_[spec.name] = tables_.size();
        tables_.emplace_back(spec.name, spec.columns);
    }
}

bool EhrDatabase::has_table(const std::string& name) const { return index_.count(name) > 0; }

const Table& EhrDatabase::table(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) raise(ErrorCode::UnknownTable, name);
    return tables_[it->second];
}

Table& EhrDatabase::table(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) raise(ErrorCode::UnknownTable, name);
    return tables_[it->second];
}

std::vector<std::int64_t> EhrDatabase::patient_ids() const {
    std::vector<std::int64_t> ids;
    const Table& patients = table("patients");
    int col = patients.require_column("subject_id");
    for (const auto& row : patients.rows()) {
        ids.push_back(std::get<std::int64_t>(row[static_cast<std::size_t>(col)]));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

std::set<std::int64_t> int_column_values(const Table& t, const std::string& column) {
    std::set<std::int64_t> values;
    int idx = t.require_column(column);
    for (const auto& row : t.rows()) {
        const Value& v = row[static_cast<std::size_t>(idx)];
        if (!is_null(v)) values.insert(std::get<std::int64_t>(v));
    }
    return values;
}

}  // namespace

void EhrDatabase::check_invariants() const {
    if (tables_.size() != schema_.tables.size()) {
        raise(ErrorCode::MissingTable, "table count mismatch");
    }
    for (const auto& spec : schema_.tables) {
        if (!has_table(spec.name)) raise(ErrorCode::MissingTable, spec.name);
        const Table& t = table(spec.name);
        if (t.column_count() != spec.columns.size()) {
            raise(ErrorCode::ColumnMismatch, spec.name);
        }
        for (std::size_t i = 0; i < spec.columns.size(); ++i) {
            if (t.columns()[i].name != spec.columns[i].name) {
                raise(ErrorCode::ColumnMismatch, spec.name + "." + spec.columns[i].name);
            }
        }
        t.check_invariants();
    }

    // Referential closure on the shared identifier columns.
    std::set<std::int64_t> subjects = int_column_values(table("patients"), "subject_id");
    std::set<std::int64_t> hadms = int_column_values(table("admissions"), "hadm_id");
    for (const auto& t : tables_) {
        if (t.name() == "patients") continue;
        if (t.column_index("subject_id") >= 0) {
            for (std::int64_t sid : int_column_values(t, "subject_id")) {
                if (!subjects.count(sid)) {
                    raise(ErrorCode::ColumnMismatch,
                          t.name() + ": orphan subject_id " + std::to_string(sid));
                }
            }
        }
        if (t.name() == "admissions") continue;
        if (t.column_index("hadm_id") >= 0) {
            for (std::int64_t hid : int_column_values(t, "hadm_id")) {
                if (!hadms.count(hid)) {
                    raise(ErrorCode::ColumnMismatch,
                          t.name() + ": orphan hadm_id " + std::to_string(hid));
                }
            }
        }
    }

    // Study ids are unique.
    const Table& cxr = table("tb_cxr");
    std::set<std::int64_t> studies;
    int sidx = cxr.require_column("study_id");
    for (const auto& row : cxr.rows()) {
        std::int64_t sid = std::get<std::int64_t>(row[static_cast<std::size_t>(sidx)]);
        if (!studies.insert(sid).second) {
            raise(ErrorCode::ColumnMismatch, "duplicate study_id " + std::to_string(sid));
        }
    }

    // No event timestamp exceeds the pinned current time.
    std::string now = current_time_.to_string();
    for (const auto& t : tables_) {
        for (std::size_t c = 0; c < t.column_count(); ++c) {
            if (t.columns()[c].kind != ValueKind::TimestampKind) continue;
            for (std::size_t r = 0; r < t.row_count(); ++r) {
                const Value& v = t.rows()[r][c];
                if (is_null(v)) continue;
                if (std::get<std::string>(v) > now) {
                    raise(ErrorCode::ColumnMismatch,
                          t.name() + "." + t.columns()[c].name + " exceeds current_time at row " +
                              std::to_string(r));
                }
            }
        }
    }
}

Value coerce_cell(const std::string& text, ValueKind kind, const std::string& table,
                  const std::string& column, std::size_t row_index) {
    if (text.empty()) return Value{};
    auto fail = [&]() -> Value {
        raise(ErrorCode::TypeCoercionFailure,
              table + "." + column + " row " + std::to_string(row_index) + ": '" + text + "'");
    };
    switch (kind) {
        case ValueKind::Int: {
            char* end = nullptr;
            long long v = std::strtoll(text.c_str(), &end, 10);
            if (end == text.c_str() || *end != '\0') return fail();
            return Value{static_cast<std::int64_t>(v)};
        }
        case ValueKind::Float: {
            char* end = nullptr;
            double v = std::strtod(text.c_str(), &end);
            if (end == text.c_str() || *end != '\0') return fail();
            return Value{v};
        }
        case ValueKind::TimestampKind: {
            auto ts = Timestamp::parse(text);
            if (!ts) return fail();
            return Value{ts->to_string()};
        }
        case ValueKind::Text:
        case ValueKind::Null: return Value{text};
    }
    return fail();
}

std::string cell_to_csv(const Value& v) { return value_to_text(v); }

void EhrDatabase::save(const std::string& dir) const {
    fs::create_directories(dir);
    for (const auto& t : tables_) {
        std::vector<std::string> header;
        for (const auto& c : t.columns()) header.push_back(c.name);
        std::vector<std::vector<std::string>> rows;
        rows.reserve(t.row_count());
        for (const auto& row : t.rows()) {
            std::vector<std::string> out;
            out.reserve(row.size());
            for (const auto& v : row) out.push_back(cell_to_csv(v));
            rows.push_back(std::move(out));
        }
        write_csv(dir + "/" + t.name() + ".csv", header, rows);
    }
    write_text_file(dir + "/schema.txt", schema_.to_text());
    std::ostringstream meta;
    meta << "current_time=" << current_time_.to_string() << '\n';
    meta << "cohort_tag=" << cohort_tag_name(cohort_tag_) << '\n';
    write_text_file(dir + "/metadata.txt", meta.str());
}

EhrDatabase EhrDatabase::load(const std::string& dir) {
    SchemaManifest manifest = SchemaManifest::load(dir + "/schema.txt");
    std::string meta = read_text_file(dir + "/metadata.txt");
    Timestamp now;
    CohortTag tag = CohortTag::Custom;
    {
        std::istringstream in(meta);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("current_time=", 0) == 0) {
                auto ts = Timestamp::parse(line.substr(13));
                if (!ts) raise(ErrorCode::TypeCoercionFailure, "metadata current_time");
                now = *ts;
            } else if (line.rfind("cohort_tag=", 0) == 0) {
                tag = cohort_tag_from_name(line.substr(11));
            }
        }
    }
    EhrDatabase db(manifest, now, tag);
    for (const auto& spec : manifest.tables) {
        std::string path = dir + "/" + spec.name + ".csv";
        if (!fs::exists(path)) raise(ErrorCode::MissingTable, spec.name + " (" + path + ")");
        auto rows = read_csv(path);
        if (rows.empty()) raise(ErrorCode::ColumnMismatch, spec.name + ": missing header");
        if (rows[0].size() != spec.columns.size()) {
            raise(ErrorCode::ColumnMismatch, spec.name + ": header width");
        }
        for (std::size_t i = 0; i < spec.columns.size(); ++i) {
            if (rows[0][i] != spec.columns[i].name) {
                raise(ErrorCode::ColumnMismatch, spec.name + "." + spec.columns[i].name);
            }
        }
        Table& t = db.table(spec.name);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            Row row;
            row.reserve(spec.columns.size());
            if (rows[r].size() != spec.columns.size()) {
                raise(ErrorCode::ColumnMismatch,
                      spec.name + ": row " + std::to_string(r - 1) + " width");
            }
            for (std::size_t c = 0; c < spec.columns.size(); ++c) {
                row.push_back(
                    coerce_cell(rows[r][c], spec.columns[c].kind, spec.name, spec.columns[c].name,
                                r - 1));
            }
            t.add_row(std::move(row));
        }
    }
    return db;
}

std::string EhrDatabase::fingerprint_text() const {
    std::ostringstream out;
    out << current_time_.to_string() << '|' << cohort_tag_name(cohort_tag_) << '\n';
    for (const auto& t : tables_) {
        out << t.name() << '\n';
        for (const auto& row : t.rows()) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << csv_escape(cell_to_csv(row[i]));
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace ehrxqa
