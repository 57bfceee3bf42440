#ifndef SEMLINK_LINKAGE_HPP
#define SEMLINK_LINKAGE_HPP

#include "semlink/nmc.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace semlink {

/// Why a pair of components does not fit. Mismatches are ordinary values:
/// an incompatible pair is a result, not an error.
namespace mismatch {

struct DomainMismatch {
    std::string expected;
    std::string found;
    bool operator==(const DomainMismatch&) const = default;
};

struct InterfaceMissing {
    std::string interface_name;
    bool operator==(const InterfaceMissing&) const = default;
};

struct SignatureMissing {
    std::string signature_name;
    std::size_t arity = 0;
    bool operator==(const SignatureMissing&) const = default;
};

struct ParamTypeMismatch {
    std::string signature_name;
    std::size_t index = 0;
    std::string required_type;
    std::string provided_type;
    bool operator==(const ParamTypeMismatch&) const = default;
};

struct ReturnTypeMismatch {
    std::string signature_name;
    std::string required_type;
    std::string provided_type;
    bool operator==(const ReturnTypeMismatch&) const = default;
};

struct NoCandidates {
    bool operator==(const NoCandidates&) const = default;
};

} // namespace mismatch

using MismatchReason =
    std::variant<mismatch::DomainMismatch, mismatch::InterfaceMissing,
                 mismatch::SignatureMissing, mismatch::ParamTypeMismatch,
                 mismatch::ReturnTypeMismatch, mismatch::NoCandidates>;

/// One human-readable line per reason, stable across runs.
std::string describe(const MismatchReason& reason);

/// Outcome of checking one required port of `initial` against `target` at
/// fixed revisions. ok holds exactly when reasons is empty.
struct MatchReport {
    std::string initial_id;
    std::string target_id;
    std::size_t initial_ordinal = 0;
    std::size_t target_ordinal = 0;
    std::string port;
    bool ok = false;
    std::vector<MismatchReason> reasons;

    bool operator==(const MatchReport&) const = default;
};

/// A factory-style link reference, constructible only from a report that
/// proved compatibility. Captures the revisions under which the proof holds.
struct Binding {
    std::string initial_id;
    std::string target_id;
    std::string port;
    std::size_t initial_ordinal = 0;
    std::size_t target_ordinal = 0;

    bool operator==(const Binding&) const = default;
};

/// Call compatibility of one required signature against one provided
/// signature: equal names and arities, each required parameter a declared
/// subtype of the provided one, and the provided return type a declared
/// subtype of the required one. Returns the first failing condition, or
/// nothing when the signatures fit.
std::optional<MismatchReason> match_signature(const Signature& required,
                                              const Signature& provided,
                                              const TypingContext& typing);

/// Matches every signature of a required port against the provided ports of
/// `provided_view`. Extra provided signatures are ignored; all failures are
/// accumulated.
std::vector<MismatchReason> match_port(const Port& required, const ComponentView& provided_view,
                                       const TypingContext& typing);

/// Full pairwise check: the domain gate first (a differing domain is
/// reported without structural checks), then port matching under the union
/// of both typing relations. Throws Error(TypingConflict) when that union
/// contains a cycle and Error(UnknownPort) when `port` is not required by
/// `initial_view` at its revision.
MatchReport check_pair(const ComponentView& initial_view, const ComponentView& target_view,
                       const std::string& port);

/// Projects an ok report into a Binding. Throws Error(UnprovenBinding) for
/// a report that is not ok.
Binding bind(const MatchReport& report);

} // namespace semlink

#endif
