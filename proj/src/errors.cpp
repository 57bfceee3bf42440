#include "semlink/errors.hpp"

namespace semlink {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownParent: return "unknown-parent";
    case ErrorKind::IllegalChildKind: return "illegal-child-kind";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::UnknownNode: return "unknown-node";
    case ErrorKind::EmptyKey: return "empty-key";
    case ErrorKind::SelfInheritance: return "self-inheritance";
    case ErrorKind::InheritanceCycle: return "inheritance-cycle";
    case ErrorKind::MalformedDocument: return "malformed-document";
    case ErrorKind::SchemaViolation: return "schema-violation";
    case ErrorKind::SignatureDrift: return "signature-drift";
    case ErrorKind::UnknownRevision: return "unknown-revision";
    case ErrorKind::UnknownPort: return "unknown-port";
    case ErrorKind::TypingConflict: return "typing-conflict";
    case ErrorKind::UnprovenBinding: return "unproven-binding";
    case ErrorKind::NotARollbackVerdict: return "not-a-rollback-verdict";
    case ErrorKind::MalformedEntry: return "malformed-entry";
    case ErrorKind::UnknownMember: return "unknown-member";
    case ErrorKind::IoError: return "io-error";
    }
    return "unknown-error";
}

} // namespace semlink
