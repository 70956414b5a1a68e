#pragma once

#include <string>
#include <vector>

namespace ehrxqa {

/// Comma-delimited, UTF-8, header row; quoted fields with doubled quotes.
/// Empty unquoted field = null (callers map "" to null where appropriate).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ehrxqa
