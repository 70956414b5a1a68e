#pragma once

#include <stdexcept>
#include <string>

namespace ehrxqa {

enum class ErrorCode {
    // store
    MissingTable,
    ColumnMismatch,
    TypeCoercionFailure,
    EmptyTimeline,
    InsufficientPatients,
    InvalidSpec,
    // sql
    SqlSyntaxError,
    UnknownColumn,
    UnknownTable,
    // labels
    UnknownObject,
    UnknownAttribute,
    UnknownStudy,
    MissingGeometry,
    StudyWithoutLabels,
    // templates
    SlotMismatch,
    DuplicateId,
    UnknownPhrase,
    MissingSlot,
    IllegalValue,
    NoPatternMatch,
    // dialect
    SyntaxError,
    ArityError,
    BadImageRef,
    ContextMismatch,
    // executor
    PlanError,
    UnboundExpr,
    // backend
    BackendUnavailable,
    Timeout,
    ShapeMismatch,
    // retrieval / prompting
    EmptyCorpus,
    InsufficientExamples,
    GeneratorUnavailable,
    EmptyCompletion,
    // misc
    IoError,
    Internal,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for all domain failures; `code()` identifies the
/// failure class and the message carries the payload (file, column, row...).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace ehrxqa
