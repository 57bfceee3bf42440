#ifndef SEMLINK_ROLLBACK_HPP
#define SEMLINK_ROLLBACK_HPP

#include "semlink/linkage.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace semlink {

/// The three operation rules, as one tagged value: the pair works as
/// deployed, it does not work at all, or it works after rolling one or both
/// sides back to older revisions.
struct Verdict {
    enum class Kind { Works, DoesNotWork, WorksAfterRollback };

    Kind kind = Kind::DoesNotWork;
    std::vector<MismatchReason> reasons;  // DoesNotWork: the deployed-revision findings
    std::size_t initial_ordinal = 0;      // WorksAfterRollback: aligned revisions
    std::size_t target_ordinal = 0;
    std::size_t total_distance = 0;       // WorksAfterRollback: >= 1

    static Verdict works();
    static Verdict does_not_work(std::vector<MismatchReason> reasons);
    static Verdict works_after_rollback(std::size_t initial_ordinal, std::size_t target_ordinal,
                                        std::size_t total_distance);

    bool operator==(const Verdict&) const = default;
};

const char* to_string(Verdict::Kind kind);

/// One aligned revision pair found by the rollback search. distance is the
/// sum of both sides' rollback distances.
struct AlignmentCandidate {
    std::size_t initial_ordinal = 0;
    std::size_t target_ordinal = 0;
    std::size_t distance = 0;

    bool operator==(const AlignmentCandidate&) const = default;
};

/// A per-component rollback step emitted by alignment_plan.
struct AlignmentStep {
    std::string component_id;
    std::size_t from_ordinal = 0;
    std::size_t to_ordinal = 0;

    bool operator==(const AlignmentStep&) const = default;
};

/// Classifies the pair at both components' current revisions, falling back
/// to the rollback search on failure. Exactly one of the three verdict forms
/// comes back; DoesNotWork carries the current-revision reasons.
Verdict classify(const Nmc& initial, const Nmc& target, const std::string& port);

/// Same classification, but with explicit starting revisions. Used when a
/// component is already deployed below its newest revision; the search never
/// rolls forward past the starting ordinals.
Verdict classify_from(const Nmc& initial, std::size_t initial_start, const Nmc& target,
                      std::size_t target_start, const std::string& port);

/// Exhaustive search over all revision pairs at or below the current ones,
/// excluding the current pair itself. Returns the working pair minimizing
/// (total distance, initial-side distance, target-side distance) — on ties
/// the initial component stays newest — or nothing when no pair works.
std::optional<AlignmentCandidate> rollback_search(const Nmc& initial, const Nmc& target,
                                                  const std::string& port);

std::optional<AlignmentCandidate> rollback_search_from(const Nmc& initial,
                                                       std::size_t initial_start,
                                                       const Nmc& target,
                                                       std::size_t target_start,
                                                       const std::string& port);

/// The per-component steps needed to reach a rollback verdict's aligned
/// ordinals, initial side first; sides already at their aligned revision are
/// omitted. Throws Error(NotARollbackVerdict) for the other verdict forms.
std::vector<AlignmentStep> alignment_plan(const Verdict& verdict, const std::string& initial_id,
                                          std::size_t initial_from, const std::string& target_id,
                                          std::size_t target_from);

/// Convenience overload starting from both components' current revisions.
std::vector<AlignmentStep> alignment_plan(const Verdict& verdict, const Nmc& initial,
                                          const Nmc& target);

} // namespace semlink

#endif
