#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ehrxqa/nsql/ast.hpp"

namespace ehrxqa::nsql {

/// Table layout visible to a query: table name -> ordered column names.
using SqlSchema = std::map<std::string, std::vector<std::string>>;

/// How a VQA sub-question binds into SQL: verify/size/plane/gender forms act
/// as scalars, list-valued forms act as relations joined on the image id.
enum class VqaShape { Scalar, Set };

using VqaClassifier = std::function<VqaShape(const std::string& sub_question)>;

/// Resolves every table/column reference, checks that each FUNC_VQA image
/// reference reaches tb_cxr.study_id (possibly through aliases or derived
/// tables), and, when a classifier is supplied, that each call site's
/// context matches the sub-question's shape.
void validate(const SelectStmt& stmt, const SqlSchema& schema,
              const VqaClassifier& classify = nullptr);

}  // namespace ehrxqa::nsql
