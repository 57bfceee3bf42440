#include "semlink/analyse.hpp"

#include "semlink/errors.hpp"

#include <set>
#include <tuple>

namespace semlink {

AnalysisResult analyse(const LinkRequest& request) {
    if (!request.initial)
        throw Error(ErrorKind::UnknownMember, "link request has no initial component");
    const Nmc& initial = *request.initial;

    ComponentView initial_view = at_revision(initial, initial.current_ordinal());
    if (!initial_view.find_port(PortDirection::Required, request.port))
        throw Error(ErrorKind::UnknownPort,
                    "'" + request.port + "' is not a required port of '" + initial.id + "'");

    std::set<std::string> seen_ids{initial.id};
    for (const Nmc* candidate : request.candidates)
        if (!candidate || !seen_ids.insert(candidate->id).second)
            throw Error(ErrorKind::DuplicateId,
                        "candidate ids must be unique and distinct from the initial component");

    AnalysisResult result;

    // Pass 1: the domain gate, then every remaining candidate at both
    // components' current revisions.
    std::vector<const Nmc*> eligible;
    for (const Nmc* candidate : request.candidates) {
        if (candidate->domain != initial.domain) {
            result.skipped.push_back(
                {candidate->id, {initial.domain, candidate->domain}});
            continue;
        }
        eligible.push_back(candidate);
        result.reports.push_back(check_pair(
            initial_view, at_revision(*candidate, candidate->current_ordinal()), request.port));
    }

    const std::string* best_current = nullptr;
    for (const MatchReport& report : result.reports)
        if (report.ok && (!best_current || report.target_id < *best_current))
            best_current = &report.target_id;
    if (best_current) {
        result.target = *best_current;
        result.verdict = Verdict::works();
        return result;
    }

    // Pass 2: the rollback search per eligible candidate; least total
    // distance wins, then the smaller id.
    const Nmc* best_candidate = nullptr;
    AlignmentCandidate best_alignment;
    for (const Nmc* candidate : eligible) {
        std::optional<AlignmentCandidate> aligned =
            rollback_search(initial, *candidate, request.port);
        if (!aligned)
            continue;
        if (!best_candidate ||
            std::make_tuple(aligned->distance, candidate->id) <
                std::make_tuple(best_alignment.distance, best_candidate->id)) {
            best_candidate = candidate;
            best_alignment = *aligned;
        }
    }
    if (best_candidate) {
        result.target = best_candidate->id;
        result.verdict = Verdict::works_after_rollback(
            best_alignment.initial_ordinal, best_alignment.target_ordinal,
            best_alignment.distance);
        return result;
    }

    // Pass 3: nothing fits. Accumulate the current-revision reasons, or
    // report the empty candidate set.
    std::vector<MismatchReason> reasons;
    for (const MatchReport& report : result.reports)
        reasons.insert(reasons.end(), report.reasons.begin(), report.reasons.end());
    if (reasons.empty())
        reasons.push_back(mismatch::NoCandidates{});
    result.verdict = Verdict::does_not_work(std::move(reasons));
    return result;
}

} // namespace semlink
