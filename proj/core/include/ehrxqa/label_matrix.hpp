#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ehrxqa/ontology.hpp"
#include "ehrxqa/table.hpp"

namespace ehrxqa {

class EhrDatabase;

/// Change of one relation between two studies of the same patient.
enum class ComparisonLabel { StillPresent, StillAbsent, NewlyDetected, Resolved };

const char* comparison_label_name(ComparisonLabel label);
ComparisonLabel comparison_label(int prev_bit, int cur_bit);

struct SizeVerdicts {
    bool ctr_exceeds = false;  // cardiac width > thorax width / 2
    bool mtr_exceeds = false;  // mediastinum width > thorax width / 3
};

/// Horizontal extent of one object in image pixels.
struct Extent {
    int min_x = 0;
    int max_x = 0;
    int width() const { return max_x - min_x; }
};

/// Per-study ground truth: presence bit per allowed relation, object
/// geometry, view position and patient gender. The ground truth behind every
/// image answer.
class LabelMatrix {
  public:
    LabelMatrix() = default;
    explicit LabelMatrix(std::shared_ptr<const Ontology> ontology)
        : ontology_(std::move(ontology)) {}

    const Ontology& ontology() const { return *ontology_; }
    std::shared_ptr<const Ontology> ontology_ptr() const { return ontology_; }

    void add_study(std::int64_t study_id, const std::string& view, const std::string& gender);
    void set_bit(std::int64_t study_id, const std::string& object, const std::string& attribute,
                 bool present);
    void set_geometry(std::int64_t study_id, const std::string& object, Extent extent);

    bool has_study(std::int64_t study_id) const { return bits_.count(study_id) > 0; }
    const std::vector<std::int64_t>& studies() const { return study_order_; }

    int bit(std::int64_t study_id, const std::string& object,
            const std::string& attribute) const;
    const std::string& view(std::int64_t study_id) const;
    const std::string& gender(std::int64_t study_id) const;
    std::optional<Extent> geometry(std::int64_t study_id, const std::string& object) const;

    /// Raw presence vector indexed like Ontology::allowed_pairs().
    const std::vector<std::uint8_t>& bits(std::int64_t study_id) const;

    SizeVerdicts size_verdicts(std::int64_t study_id) const;

    void save(const std::string& path) const;
    static LabelMatrix load(const std::string& path, std::shared_ptr<const Ontology> ontology);

  private:
    struct Meta {
        std::string view;
        std::string gender;
    };

    std::shared_ptr<const Ontology> ontology_;
    std::vector<std::int64_t> study_order_;
    std::map<std::int64_t, std::vector<std::uint8_t>> bits_;
    std::map<std::int64_t, Meta> meta_;
    std::map<std::int64_t, std::map<std::string, Extent>> geometry_;
};

/// Size rule over raw extents; thorax width spans from the left lung's
/// largest x to the right lung's smallest x (x axis is mirrored on an X-ray).
SizeVerdicts size_verdicts_from_geometry(const std::map<std::string, Extent>& geometry);

/// Ontology closure: drops pairs outside the allowed set, then propagates
/// child-object presence to parent objects and child-attribute presence to
/// parent attributes until fixpoint. Idempotent and monotone.
LabelMatrix propagate_ontology(const LabelMatrix& raw, const Ontology& ontology);

/// Deterministic column name of one relation in the wide answer sheet.
std::string relation_column_name(const std::string& object, const std::string& attribute);

/// Wide per-study answer sheet: the tb_cxr columns, one 0/1 column per
/// allowed relation, then view/gender/size-verdict columns. Construction-time
/// ground truth only; the runtime executor never sees it.
Table materialize_answer_sheet(const EhrDatabase& db, const LabelMatrix& labels);

/// Long-form companion (tb_cxr_labels): one row per study and allowed
/// relation with its category and presence bit. Used by answer-sheet SQL for
/// list-valued questions.
Table materialize_label_relation(const EhrDatabase& db, const LabelMatrix& labels);

}  // namespace ehrxqa
