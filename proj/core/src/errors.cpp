#include "ehrxqa/errors.hpp"

namespace ehrxqa {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingTable: return "MissingTable";
        case ErrorCode::ColumnMismatch: return "ColumnMismatch";
        case ErrorCode::TypeCoercionFailure: return "TypeCoercionFailure";
        case ErrorCode::EmptyTimeline: return "EmptyTimeline";
        case ErrorCode::InsufficientPatients: return "InsufficientPatients";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::SqlSyntaxError: return "SqlSyntaxError";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::UnknownTable: return "UnknownTable";
        case ErrorCode::UnknownObject: return "UnknownObject";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::UnknownStudy: return "UnknownStudy";
        case ErrorCode::MissingGeometry: return "MissingGeometry";
        case ErrorCode::StudyWithoutLabels: return "StudyWithoutLabels";
        case ErrorCode::SlotMismatch: return "SlotMismatch";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownPhrase: return "UnknownPhrase";
        case ErrorCode::MissingSlot: return "MissingSlot";
        case ErrorCode::IllegalValue: return "IllegalValue";
        case ErrorCode::NoPatternMatch: return "NoPatternMatch";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::ArityError: return "ArityError";
        case ErrorCode::BadImageRef: return "BadImageRef";
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::PlanError: return "PlanError";
        case ErrorCode::UnboundExpr: return "UnboundExpr";
        case ErrorCode::BackendUnavailable: return "BackendUnavailable";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::InsufficientExamples: return "InsufficientExamples";
        case ErrorCode::GeneratorUnavailable: return "GeneratorUnavailable";
        case ErrorCode::EmptyCompletion: return "EmptyCompletion";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace ehrxqa
