#include "semlink/rollback.hpp"

#include "semlink/errors.hpp"

#include <tuple>

namespace semlink {

Verdict Verdict::works() {
    Verdict v;
    v.kind = Kind::Works;
    return v;
}

Verdict Verdict::does_not_work(std::vector<MismatchReason> reasons) {
    Verdict v;
    v.kind = Kind::DoesNotWork;
    v.reasons = std::move(reasons);
    return v;
}

Verdict Verdict::works_after_rollback(std::size_t initial_ordinal, std::size_t target_ordinal,
                                      std::size_t total_distance) {
    Verdict v;
    v.kind = Kind::WorksAfterRollback;
    v.initial_ordinal = initial_ordinal;
    v.target_ordinal = target_ordinal;
    v.total_distance = total_distance;
    return v;
}

const char* to_string(Verdict::Kind kind) {
    switch (kind) {
    case Verdict::Kind::Works: return "works";
    case Verdict::Kind::DoesNotWork: return "does-not-work";
    case Verdict::Kind::WorksAfterRollback: return "works-after-rollback";
    }
    return "unknown";
}

namespace {

/// check_pair with the initial-side precondition relaxed: while probing old
/// revisions the required port may have been masked away, which simply means
/// that pair cannot work.
bool pair_works(const Nmc& initial, std::size_t initial_ordinal, const Nmc& target,
                std::size_t target_ordinal, const std::string& port) {
    ComponentView initial_view = at_revision(initial, initial_ordinal);
    if (!initial_view.find_port(PortDirection::Required, port))
        return false;
    ComponentView target_view = at_revision(target, target_ordinal);
    return check_pair(initial_view, target_view, port).ok;
}

} // namespace

std::optional<AlignmentCandidate> rollback_search_from(const Nmc& initial,
                                                       std::size_t initial_start,
                                                       const Nmc& target,
                                                       std::size_t target_start,
                                                       const std::string& port) {
    initial.revision(initial_start); // validate the starting ordinals
    target.revision(target_start);

    std::optional<AlignmentCandidate> best;
    auto key = [&](const AlignmentCandidate& c) {
        return std::make_tuple(c.distance, initial_start - c.initial_ordinal,
                               target_start - c.target_ordinal);
    };
    // Histories are short; the grid is scanned exhaustively.
    for (std::size_t i = 0; i <= initial_start; ++i) {
        for (std::size_t j = 0; j <= target_start; ++j) {
            if (i == initial_start && j == target_start)
                continue;
            if (!pair_works(initial, i, target, j, port))
                continue;
            AlignmentCandidate candidate{i, j, (initial_start - i) + (target_start - j)};
            if (!best || key(candidate) < key(*best))
                best = candidate;
        }
    }
    return best;
}

std::optional<AlignmentCandidate> rollback_search(const Nmc& initial, const Nmc& target,
                                                  const std::string& port) {
    return rollback_search_from(initial, initial.current_ordinal(), target,
                                target.current_ordinal(), port);
}

Verdict classify_from(const Nmc& initial, std::size_t initial_start, const Nmc& target,
                      std::size_t target_start, const std::string& port) {
    MatchReport current = check_pair(at_revision(initial, initial_start),
                                     at_revision(target, target_start), port);
    if (current.ok)
        return Verdict::works();

    if (std::optional<AlignmentCandidate> aligned =
            rollback_search_from(initial, initial_start, target, target_start, port))
        return Verdict::works_after_rollback(aligned->initial_ordinal, aligned->target_ordinal,
                                             aligned->distance);

    return Verdict::does_not_work(std::move(current.reasons));
}

Verdict classify(const Nmc& initial, const Nmc& target, const std::string& port) {
    return classify_from(initial, initial.current_ordinal(), target, target.current_ordinal(),
                         port);
}

std::vector<AlignmentStep> alignment_plan(const Verdict& verdict, const std::string& initial_id,
                                          std::size_t initial_from, const std::string& target_id,
                                          std::size_t target_from) {
    if (verdict.kind != Verdict::Kind::WorksAfterRollback)
        throw Error(ErrorKind::NotARollbackVerdict,
                    std::string("verdict '") + to_string(verdict.kind) + "' carries no alignment");
    std::vector<AlignmentStep> steps;
    if (verdict.initial_ordinal != initial_from)
        steps.push_back({initial_id, initial_from, verdict.initial_ordinal});
    if (verdict.target_ordinal != target_from)
        steps.push_back({target_id, target_from, verdict.target_ordinal});
    return steps;
}

std::vector<AlignmentStep> alignment_plan(const Verdict& verdict, const Nmc& initial,
                                          const Nmc& target) {
    return alignment_plan(verdict, initial.id, initial.current_ordinal(), target.id,
                          target.current_ordinal());
}

} // namespace semlink
