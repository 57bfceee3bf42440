#ifndef SEMLINK_ANALYSE_HPP
#define SEMLINK_ANALYSE_HPP

#include "semlink/rollback.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semlink {

/// A request from the initial point: find, among the candidates, a component
/// that satisfies one of the initial component's required ports.
struct LinkRequest {
    const Nmc* initial = nullptr;
    std::string port;
    std::vector<const Nmc*> candidates; // analysis order
};

/// A candidate set aside by the domain gate before any structural check.
struct SkippedCandidate {
    std::string id;
    mismatch::DomainMismatch reason;

    bool operator==(const SkippedCandidate&) const = default;
};

/// What the Linkage Manager reports back to the initial point. target is
/// present exactly when the verdict is not DoesNotWork; reports holds the
/// current-revision check of every candidate that passed the domain gate,
/// in candidate order.
struct AnalysisResult {
    std::optional<std::string> target;
    Verdict verdict;
    std::vector<SkippedCandidate> skipped;
    std::vector<MatchReport> reports;

    bool operator==(const AnalysisResult&) const = default;
};

/// Candidate analysis: domain-gate the candidates, check the rest at current
/// revisions, and fall back to the per-candidate rollback search. Successful
/// candidates are tie-broken by lexicographically smallest id; rollback
/// targets by least (total distance, id). Deterministic for equal inputs.
AnalysisResult analyse(const LinkRequest& request);

} // namespace semlink

#endif
