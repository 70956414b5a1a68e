#include "ehrxqa/schema.hpp"

#include <sstream>

#include "ehrxqa/csv.hpp"
#include "ehrxqa/errors.hpp"

namespace ehrxqa {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

const SchemaManifest::TableSpec* SchemaManifest::find(const std::string& name) const {
    for (const auto& t : tables) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

SchemaManifest SchemaManifest::parse(const std::string& text) {
    SchemaManifest manifest;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            raise(ErrorCode::ColumnMismatch, "schema manifest line without ':': " + line);
        }
        TableSpec spec;
        spec.name = trim(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        std::istringstream cols(rest);
        std::string item;
        while (std::getline(cols, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            std::size_t sep = item.find(':');
            if (sep == std::string::npos) {
                raise(ErrorCode::ColumnMismatch, spec.name + ": column without kind: " + item);
            }
            spec.columns.push_back(
                {trim(item.substr(0, sep)), value_kind_from_name(trim(item.substr(sep + 1)))});
        }
        manifest.tables.push_back(std::move(spec));
    }
    return manifest;
}

SchemaManifest SchemaManifest::load(const std::string& path) {
    return parse(read_text_file(path));
}

std::string SchemaManifest::to_text() const {
    std::ostringstream out;
    for (const auto& t : tables) {
        out << t.name << ": ";
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) out << ", ";
            out << t.columns[i].name << ":" << value_kind_name(t.columns[i].kind);
        }
        out << '\n';
    }
    return out.str();
}

SchemaManifest SchemaManifest::standard() {
    static const char* kText = R"(
patients: row_id:int, subject_id:int, gender:text, dob:timestamp, dod:timestamp
admissions: row_id:int, subject_id:int, hadm_id:int, admittime:timestamp, dischtime:timestamp, admission_type:text, admission_location:text, discharge_location:text, insurance:text, language:text, marital_status:text, age:int
d_icd_diagnoses: row_id:int, icd_code:text, long_title:text
d_icd_procedures: row_id:int, icd_code:text, long_title:text
d_labitems: row_id:int, itemid:int, label:text
d_items: row_id:int, itemid:int, label:text, abbreviation:text, linksto:text
diagnoses_icd: row_id:int, subject_id:int, hadm_id:int, icd_code:text, charttime:timestamp
procedures_icd: row_id:int, subject_id:int, hadm_id:int, icd_code:text, charttime:timestamp
labevents: row_id:int, subject_id:int, hadm_id:int, itemid:int, charttime:timestamp, valuenum:float, valueuom:text
prescriptions: row_id:int, subject_id:int, hadm_id:int, starttime:timestamp, stoptime:timestamp, drug:text, dose_val_rx:float, dose_unit_rx:text, route:text
cost: row_id:int, subject_id:int, hadm_id:int, event_type:text, event_id:int, chargetime:timestamp, cost:float
chartevents: row_id:int, subject_id:int, hadm_id:int, stay_id:int, itemid:int, charttime:timestamp, valuenum:float, valueuom:text
inputevents: row_id:int, subject_id:int, hadm_id:int, stay_id:int, starttime:timestamp, itemid:int, amount:float
outputevents: row_id:int, subject_id:int, hadm_id:int, stay_id:int, charttime:timestamp, itemid:int, value:float
microbiologyevents: row_id:int, subject_id:int, hadm_id:int, charttime:timestamp, spec_type_desc:text, test_name:text, org_name:text
icustays: row_id:int, subject_id:int, hadm_id:int, stay_id:int, first_careunit:text, last_careunit:text, intime:timestamp, outtime:timestamp
transfers: row_id:int, subject_id:int, hadm_id:int, transfer_id:int, eventtype:text, careunit:text, intime:timestamp, outtime:timestamp
tb_cxr: subject_id:int, hadm_id:int, study_id:int, image_id:text, studydatetime:timestamp, viewposition:text
)";
    return parse(kText);
}

}  // namespace ehrxqa
