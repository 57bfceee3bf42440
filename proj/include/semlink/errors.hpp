#ifndef SEMLINK_ERRORS_HPP
#define SEMLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semlink {

/// Contract violations and ingestion failures. Compatibility *mismatches* are
/// ordinary values (see MismatchReason); an Error means the request itself was
/// ill-formed or an input file could not be used.
enum class ErrorKind {
    UnknownParent,
    IllegalChildKind,
    DuplicateId,
    UnknownNode,
    EmptyKey,
    SelfInheritance,
    InheritanceCycle,
    MalformedDocument,
    SchemaViolation,
    SignatureDrift,
    UnknownRevision,
    UnknownPort,
    TypingConflict,
    UnprovenBinding,
    NotARollbackVerdict,
    MalformedEntry,
    UnknownMember,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace semlink

#endif
