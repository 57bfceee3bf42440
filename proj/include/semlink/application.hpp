#ifndef SEMLINK_APPLICATION_HPP
#define SEMLINK_APPLICATION_HPP

#include "semlink/rollback.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace semlink {

/// One wiring edge: `from` requires `port`; `to` is expected to provide it.
struct Link {
    std::string from_id;
    std::string port;
    std::string to_id;

    bool operator==(const Link&) const = default;
};

/// Components arranged into a functional application. Members are pinned to
/// a revision via current_ordinals (newest unless the file pins them).
/// Single-owner mutable state: verification is read-only, exchange needs
/// exclusive access.
struct Application {
    std::vector<Nmc> members;
    std::vector<std::string> member_refs; // manifest paths, parallel to members
    std::vector<Link> links;
    std::map<std::string, std::size_t> current_ordinals;

    const Nmc& member(const std::string& id) const;
    bool has_member(const std::string& id) const;
    std::size_t ordinal_of(const std::string& id) const;

    bool operator==(const Application&) const = default;
};

struct LinkReport {
    Link link;
    MatchReport report;

    bool operator==(const LinkReport&) const = default;
};

struct VerificationResult {
    std::vector<LinkReport> reports; // one per link, in wiring order
    bool overall = false;            // true iff every link checks ok
};

struct LinkVerdict {
    Link link;
    Verdict verdict;

    bool operator==(const LinkVerdict&) const = default;
};

/// Outcome of a hot-swap exchange. overall is Works when every touched link
/// works as deployed, DoesNotWork when any link fails outright, and
/// WorksAfterRollback otherwise. committed tells whether the application was
/// actually updated; applied_alignments lists the rollback steps that were
/// committed (empty unless a rollback commit happened).
struct ExchangeResult {
    std::string replaced_id;
    std::vector<LinkVerdict> per_link; // touched links only, in wiring order
    Verdict::Kind overall = Verdict::Kind::Works;
    std::vector<AlignmentStep> applied_alignments;
    bool committed = false;
};

/// Parses an application document; member manifests resolve relative to
/// `base_dir`. Members default to their newest revision; <pin> elements
/// override that.
Application parse_application(const std::string& document, const std::string& base_dir);

Application load_application_file(const std::string& path);

/// Canonical form: members, then links, then one <pin> per member deployed
/// below its newest revision. Byte-deterministic.
std::string serialize_application(const Application& app);

/// Checks every link at the members' current ordinals. Throws
/// Error(TypingConflict) naming the offending link.
VerificationResult verify_application(const Application& app);

/// Replaces `old_id` with `replacement` (same or new id), re-checks exactly
/// the links touching it, and commits only outcomes that keep the whole
/// application verifiable: Works commits directly; WorksAfterRollback
/// commits when `apply_rollback` is set and the aligned ordinals re-verify;
/// DoesNotWork leaves the application untouched.
ExchangeResult exchange(Application& app, const std::string& old_id, const Nmc& replacement,
                        bool apply_rollback);

} // namespace semlink

#endif
