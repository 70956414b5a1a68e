#include "ehrxqa/csv.hpp"

#include <fstream>
#include <sstream>

#include "ehrxqa/errors.hpp"

namespace ehrxqa {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path);
    out << content;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::string data = read_text_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
        char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; any = true; break;
            case ',':
                row.push_back(field);
                field.clear();
                any = true;
                break;
            case '\r': break;
            case '\n':
                if (any || !field.empty() || !row.empty()) {
                    row.push_back(field);
                    rows.push_back(row);
                }
                row.clear();
                field.clear();
                any = false;
                break;
            default: field.push_back(c); any = true;
        }
    }
    if (any || !field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

std::string csv_escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(header[i]);
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace ehrxqa
