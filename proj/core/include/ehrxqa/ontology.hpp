#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ehrxqa {

/// CXR label space: anatomical objects, finding attributes grouped into five
/// categories, parent partial orders on both, and the allowed object-attribute
/// pair set. The allowed set is upward-closed under both parent relations so
/// that propagation is a pure insertion fixpoint.
class Ontology {
  public:
    static Ontology parse(const std::string& text);
    static Ontology load(const std::string& path);
    std::string to_text() const;

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }
    const std::vector<std::string>& categories() const { return categories_; }

    bool has_object(const std::string& o) const { return object_index_.count(o) > 0; }
    bool has_attribute(const std::string& a) const { return attribute_index_.count(a) > 0; }
    bool has_category(const std::string& c) const;

    const std::string& category_of(const std::string& attribute) const;

    /// Direct parents (may be empty).
    std::vector<std::string> object_parents(const std::string& object) const;
    std::vector<std::string> attribute_parents(const std::string& attribute) const;

    bool allowed(const std::string& object, const std::string& attribute) const;
    const std::vector<std::pair<std::string, std::string>>& allowed_pairs() const {
        return allowed_pairs_;
    }
    /// Index into allowed_pairs(), -1 when the pair is not allowed.
    int pair_index(const std::string& object, const std::string& attribute) const;

    /// Attributes of one category that may occur in `object`.
    std::vector<std::string> allowed_attributes(const std::string& object,
                                                const std::string& category) const;

    /// The four categories whose union defines "abnormality" (everything but
    /// technical assessment).
    static const std::vector<std::string>& abnormality_categories();

    /// Acyclic parents, category totality, allowed-set closure.
    void check_invariants() const;

  private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<std::string> categories_;
    std::map<std::string, std::size_t> object_index_;
    std::map<std::string, std::size_t> attribute_index_;
    std::map<std::string, std::string> attribute_category_;
    std::multimap<std::string, std::string> object_parents_;
    std::multimap<std::string, std::string> attribute_parents_;
    std::vector<std::pair<std::string, std::string>> allowed_pairs_;
    std::map<std::pair<std::string, std::string>, int> allowed_index_;
};

}  // namespace ehrxqa
