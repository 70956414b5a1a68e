#include "ehrxqa/ontology.hpp"

#include <algorithm>
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

std::pair<std::string, std::string> split_bar(const std::string& line) {
    std::size_t bar = line.find('|');
    if (bar == std::string::npos) {
        raise(ErrorCode::ColumnMismatch, "ontology line missing '|': " + line);
    }
    return {trim(line.substr(0, bar)), trim(line.substr(bar + 1))};
}

}  // namespace

Ontology Ontology::parse(const std::string& text) {
    Ontology ont;
    std::istringstream in(text);
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        if (section == "objects") {
            ont.object_index_[line] = ont.objects_.size();
            ont.objects_.push_back(line);
        } else if (section == "categories") {
            ont.categories_.push_back(line);
        } else if (section == "attributes") {
            auto [attr, cat] = split_bar(line);
            ont.attribute_index_[attr] = ont.attributes_.size();
            ont.attributes_.push_back(attr);
            ont.attribute_category_[attr] = cat;
        } else if (section == "object_parents") {
            auto [child, parent] = split_bar(line);
            ont.object_parents_.emplace(child, parent);
        } else if (section == "attribute_parents") {
            auto [child, parent] = split_bar(line);
            ont.attribute_parents_.emplace(child, parent);
        } else if (section == "allowed") {
            auto [object, attribute] = split_bar(line);
            ont.allowed_index_[{object, attribute}] =
                static_cast<int>(ont.allowed_pairs_.size());
            ont.allowed_pairs_.emplace_back(object, attribute);
        } else {
            raise(ErrorCode::ColumnMismatch, "ontology: unknown section '" + section + "'");
        }
    }
    ont.check_invariants();
    return ont;
}

Ontology Ontology::load(const std::string& path) { return parse(read_text_file(path)); }

std::string Ontology::to_text() const {
    std::ostringstream out;
    out << "[objects]\n";
    for (const auto& o : objects_) out << o << '\n';
    out << "[categories]\n";
    for (const auto& c : categories_) out << c << '\n';
    out << "[attributes]\n";
    for (const auto& a : attributes_) out << a << '|' << attribute_category_.at(a) << '\n';
    out << "[object_parents]\n";
    for (const auto& [child, parent] : object_parents_) out << child << '|' << parent << '\n';
    out << "[attribute_parents]\n";
    for (const auto& [child, parent] : attribute_parents_) out << child << '|' << parent << '\n';
    out << "[allowed]\n";
    for (const auto& [o, a] : allowed_pairs_) out << o << '|' << a << '\n';
    return out.str();
}

bool Ontology::has_category(const std::string& c) const {
    return std::find(categories_.begin(), categories_.end(), c) != categories_.end();
}

const std::string& Ontology::category_of(const std::string& attribute) const {
    auto it = attribute_category_.find(attribute);
    if (it == attribute_category_.end()) raise(ErrorCode::UnknownAttribute, attribute);
    return it->second;
}

std::vector<std::string> Ontology::object_parents(const std::string& object) const {
    std::vector<std::string> out;
    auto [lo, hi] = object_parents_.equal_range(object);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
}

std::vector<std::string> Ontology::attribute_parents(const std::string& attribute) const {
    std::vector<std::string> out;
    auto [lo, hi] = attribute_parents_.equal_range(attribute);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
}

bool Ontology::allowed(const std::string& object, const std::string& attribute) const {
    return allowed_index_.count({object, attribute}) > 0;
}

int Ontology::pair_index(const std::string& object, const std::string& attribute) const {
    auto it = allowed_index_.find({object, attribute});
    return it == allowed_index_.end() ? -1 : it->second;
}

std::vector<std::string> Ontology::allowed_attributes(const std::string& object,
                                                      const std::string& category) const {
    std::vector<std::string> out;
    for (const auto& [o, a] : allowed_pairs_) {
        if (o == object && attribute_category_.at(a) == category) out.push_back(a);
    }
    return out;
}

const std::vector<std::string>& Ontology::abnormality_categories() {
    static const std::vector<std::string> kCategories = {
        "anatomical finding", "disease", "device", "tubes/lines"};
    return kCategories;
}

void Ontology::check_invariants() const {
    for (const auto& a : attributes_) {
        auto it = attribute_category_.find(a);
        if (it == attribute_category_.end() || !has_category(it->second)) {
            raise(ErrorCode::UnknownAttribute, "attribute without category: " + a);
        }
    }
    // Parent edges reference known names and form no cycle.
    auto check_acyclic = [this](const std::multimap<std::string, std::string>& edges,
                                const char* what) {
        for (const auto& [child, parent] : edges) {
            std::set<std::string> seen{child};
            std::vector<std::string> frontier{parent};
            while (!frontier.empty()) {
                std::string cur = frontier.back();
                frontier.pop_back();
                if (!seen.insert(cur).second) {
                    raise(ErrorCode::ColumnMismatch,
                          std::string(what) + " parent cycle through " + cur);
                }
                auto [lo, hi] = edges.equal_range(cur);
                for (auto it = lo; it != hi; ++it) frontier.push_back(it->second);
            }
        }
    };
    check_acyclic(object_parents_, "object");
    check_acyclic(attribute_parents_, "attribute");
    for (const auto& [child, parent] : object_parents_) {
        if (!has_object(child) || !has_object(parent)) {
            raise(ErrorCode::UnknownObject, child + "|" + parent);
        }
    }
    for (const auto& [child, parent] : attribute_parents_) {
        if (!has_attribute(child) || !has_attribute(parent)) {
            raise(ErrorCode::UnknownAttribute, child + "|" + parent);
        }
    }
    // Allowed pairs reference known names; closure under both parent maps.
    for (const auto& [o, a] : allowed_pairs_) {
        if (!has_object(o)) raise(ErrorCode::UnknownObject, o);
        if (!has_attribute(a)) raise(ErrorCode::UnknownAttribute, a);
        for (const auto& po : object_parents(o)) {
            if (!allowed(po, a)) {
                raise(ErrorCode::ColumnMismatch,
                      "allowed set not closed: (" + o + ", " + a + ") without (" + po + ", " + a +
                          ")");
            }
        }
        for (const auto& pa : attribute_parents(a)) {
            if (!allowed(o, pa)) {
                raise(ErrorCode::ColumnMismatch,
                      "allowed set not closed: (" + o + ", " + a + ") without (" + o + ", " + pa +
                          ")");
            }
        }
    }
}

}  // namespace ehrxqa
