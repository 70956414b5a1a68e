#include "ehrxqa/label_matrix.hpp"

#include <sstream>

#include "ehrxqa/csv.hpp"
#include "ehrxqa/database.hpp"
#include "ehrxqa/errors.hpp"

namespace ehrxqa {

const char* comparison_label_name(ComparisonLabel label) {
    switch (label) {
        case ComparisonLabel::StillPresent: return "still present";
        case ComparisonLabel::StillAbsent: return "still absent";
        case ComparisonLabel::NewlyDetected: return "newly detected";
        case ComparisonLabel::Resolved: return "resolved";
    }
    return "still absent";
}

ComparisonLabel comparison_label(int prev_bit, int cur_bit) {
    if (prev_bit == 0 && cur_bit == 1) return ComparisonLabel::NewlyDetected;
    if (prev_bit == 1 && cur_bit == 0) return ComparisonLabel::Resolved;
    if (prev_bit == 1 && cur_bit == 1) return ComparisonLabel::StillPresent;
    return ComparisonLabel::StillAbsent;
}

void LabelMatrix::add_study(std::int64_t study_id, const std::string& view,
                            const std::string& gender) {
    if (bits_.count(study_id)) return;
    study_order_.push_back(study_id);
    bits_[study_id].assign(ontology_->allowed_pairs().size(), 0);
    meta_[study_id] = {view, gender};
}

void LabelMatrix::set_bit(std::int64_t study_id, const std::string& object,
                          const std::string& attribute, bool present) {
    if (!ontology_->has_object(object)) raise(ErrorCode::UnknownObject, object);
    if (!ontology_->has_attribute(attribute)) raise(ErrorCode::UnknownAttribute, attribute);
    auto it = bits_.find(study_id);
    if (it == bits_.end()) raise(ErrorCode::UnknownStudy, std::to_string(study_id));
    int idx = ontology_->pair_index(object, attribute);
    if (idx < 0) return;  // outside the allowed set: undefined, dropped
    it->second[static_cast<std::size_t>(idx)] = present ? 1 : 0;
}

void LabelMatrix::set_geometry(std::int64_t study_id, const std::string& object, Extent extent) {
    if (!ontology_->has_object(object)) raise(ErrorCode::UnknownObject, object);
    geometry_[study_id][object] = extent;
}

int LabelMatrix::bit(std::int64_t study_id, const std::string& object,
                     const std::string& attribute) const {
    if (!ontology_->has_object(object)) raise(ErrorCode::UnknownObject, object);
    if (!ontology_->has_attribute(attribute)) raise(ErrorCode::UnknownAttribute, attribute);
    auto it = bits_.find(study_id);
    if (it == bits_.end()) raise(ErrorCode::UnknownStudy, std::to_string(study_id));
    int idx = ontology_->pair_index(object, attribute);
    if (idx < 0) return 0;
    return it->second[static_cast<std::size_t>(idx)];
}

const std::string& LabelMatrix::view(std::int64_t study_id) const {
    auto it = meta_.find(study_id);
    if (it == meta_.end()) raise(ErrorCode::UnknownStudy, std::to_string(study_id));
    return it->second.view;
}

const std::string& LabelMatrix::gender(std::int64_t study_id) const {
    auto it = meta_.find(study_id);
    if (it == meta_.end()) raise(ErrorCode::UnknownStudy, std::to_string(study_id));
    return it->second.gender;
}

std::optional<Extent> LabelMatrix::geometry(std::int64_t study_id,
                                            const std::string& object) const {
    auto it = geometry_.find(study_id);
    if (it == geometry_.end()) return std::nullopt;
    auto jt = it->second.find(object);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

const std::vector<std::uint8_t>& LabelMatrix::bits(std::int64_t study_id) const {
    auto it = bits_.find(study_id);
    if (it == bits_.end()) raise(ErrorCode::UnknownStudy, std::to_string(study_id));
    return it->second;
}

SizeVerdicts size_verdicts_from_geometry(const std::map<std::string, Extent>& geometry) {
    auto get = [&](const char* object) -> Extent {
        auto it = geometry.find(object);
        if (it == geometry.end()) raise(ErrorCode::MissingGeometry, object);
        return it->second;
    };
    Extent cardiac = get("cardiac silhouette");
    Extent mediastinum = get("upper mediastinum");
    Extent left_lung = get("left lung");
    Extent right_lung = get("right lung");
    int thorax_width = left_lung.max_x - right_lung.min_x;
    if (thorax_width <= 0 || cardiac.width() <= 0 || mediastinum.width() <= 0) {
        raise(ErrorCode::MissingGeometry, "non-positive width");
    }
    SizeVerdicts v;
    v.ctr_exceeds = 2 * cardiac.width() > thorax_width;
    v.mtr_exceeds = 3 * mediastinum.width() > thorax_width;
    return v;
}

SizeVerdicts LabelMatrix::size_verdicts(std::int64_t study_id) const {
    auto it = geometry_.find(study_id);
    if (it == geometry_.end()) raise(ErrorCode::MissingGeometry, std::to_string(study_id));
    return size_verdicts_from_geometry(it->second);
}

LabelMatrix propagate_ontology(const LabelMatrix& raw, const Ontology& ontology) {
    LabelMatrix out = raw;
    const auto& pairs = ontology.allowed_pairs();
    for (std::int64_t study : out.studies()) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (out.bits(study)[i] == 0) continue;
                const auto& [object, attribute] = pairs[i];
                for (const auto& parent : ontology.object_parents(object)) {
                    int idx = ontology.pair_index(parent, attribute);
                    if (idx >= 0 && out.bits(study)[static_cast<std::size_t>(idx)] == 0) {
                        out.set_bit(study, parent, attribute, true);
                        changed = true;
                    }
                }
                for (const auto& parent : ontology.attribute_parents(attribute)) {
                    int idx = ontology.pair_index(object, parent);
                    if (idx >= 0 && out.bits(study)[static_cast<std::size_t>(idx)] == 0) {
                        out.set_bit(study, object, parent, true);
                        changed = true;
                    }
                }
            }
        }
    }
    return out;
}

std::string relation_column_name(const std::string& object, const std::string& attribute) {
    std::string raw = object + " " + attribute;
    std::string out = "rel";
    bool last_sep = false;
    for (char c : raw) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            if (!last_sep) out.push_back('_');
            out.push_back(c);
            last_sep = false;
        } else if (!last_sep) {
            last_sep = true;
        }
    }
    return out;
}

Table materialize_answer_sheet(const EhrDatabase& db, const LabelMatrix& labels) {
    const Table& cxr = db.table("tb_cxr");
    const Ontology& ont = labels.ontology();

    std::vector<Column> columns = cxr.columns();
    for (const auto& [object, attribute] : ont.allowed_pairs()) {
        columns.push_back({relation_column_name(object, attribute), ValueKind::Int});
    }
    columns.push_back({"view", ValueKind::Text});
    columns.push_back({"gender", ValueKind::Text});
    columns.push_back({"ctr_exceeds", ValueKind::Int});
    columns.push_back({"mtr_exceeds", ValueKind::Int});

    Table sheet("tb_cxr_plus", columns);
    int study_col = cxr.require_column("study_id");
    for (const auto& row : cxr.rows()) {
        std::int64_t study = std::get<std::int64_t>(row[static_cast<std::size_t>(study_col)]);
        if (!labels.has_study(study)) {
            raise(ErrorCode::StudyWithoutLabels, std::to_string(study));
        }
        Row out = row;
        for (std::uint8_t b : labels.bits(study)) {
            out.emplace_back(static_cast<std::int64_t>(b));
        }
        out.emplace_back(labels.view(study));
        out.emplace_back(labels.gender(study));
        SizeVerdicts v = labels.size_verdicts(study);
        out.emplace_back(static_cast<std::int64_t>(v.ctr_exceeds ? 1 : 0));
        out.emplace_back(static_cast<std::int64_t>(v.mtr_exceeds ? 1 : 0));
        sheet.add_row(std::move(out));
    }
    return sheet;
}

Table materialize_label_relation(const EhrDatabase& db, const LabelMatrix& labels) {
    const Ontology& ont = labels.ontology();
    Table t("tb_cxr_labels", {{"study_id", ValueKind::Int},
                              {"object", ValueKind::Text},
                              {"attribute", ValueKind::Text},
                              {"category", ValueKind::Text},
                              {"present", ValueKind::Int}});
    const Table& cxr = db.table("tb_cxr");
    int study_col = cxr.require_column("study_id");
    for (const auto& row : cxr.rows()) {
        std::int64_t study = std::get<std::int64_t>(row[static_cast<std::size_t>(study_col)]);
        if (!labels.has_study(study)) {
            raise(ErrorCode::StudyWithoutLabels, std::to_string(study));
        }
        const auto& bits = labels.bits(study);
        const auto& pairs = ont.allowed_pairs();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            t.add_row({Value{study}, Value{pairs[i].first}, Value{pairs[i].second},
                       Value{ont.category_of(pairs[i].second)},
                       Value{static_cast<std::int64_t>(bits[i])}});
        }
    }
    return t;
}

void LabelMatrix::save(const std::string& path) const {
    std::ostringstream out;
    out << "[studies]\n";
    for (std::int64_t s : study_order_) {
        const Meta& m = meta_.at(s);
        out << s << ',' << m.view << ',' << m.gender << '\n';
    }
    out << "[relations]\n";
    const auto& pairs = ontology_->allowed_pairs();
    for (std::int64_t s : study_order_) {
        const auto& b = bits_.at(s);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (b[i]) {
                out << s << ',' << pairs[i].first << ',' << pairs[i].second << ",1\n";
            }
        }
    }
    out << "[geometry]\n";
    for (const auto& [s, objects] : geometry_) {
        for (const auto& [object, extent] : objects) {
            out << s << ',' << object << ',' << extent.min_x << ',' << extent.max_x << '\n';
        }
    }
    write_text_file(path, out.str());
}

LabelMatrix LabelMatrix::load(const std::string& path,
                              std::shared_ptr<const Ontology> ontology) {
    LabelMatrix m(std::move(ontology));
    std::istringstream in(read_text_file(path));
    std::string line;
    std::string section;
    auto fields = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        out.push_back(cur);
        return out;
    };
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto f = fields(line);
        if (section == "studies") {
            if (f.size() != 3) raise(ErrorCode::ColumnMismatch, "labels studies row: " + line);
            m.add_study(std::stoll(f[0]), f[1], f[2]);
        } else if (section == "relations") {
            if (f.size() != 4) raise(ErrorCode::ColumnMismatch, "labels relation row: " + line);
            m.set_bit(std::stoll(f[0]), f[1], f[2], f[3] == "1");
        } else if (section == "geometry") {
            if (f.size() != 4) raise(ErrorCode::ColumnMismatch, "labels geometry row: " + line);
            m.set_geometry(std::stoll(f[0]), f[1], {std::stoi(f[2]), std::stoi(f[3])});
        }
    }
    return m;
}

}  // namespace ehrxqa
