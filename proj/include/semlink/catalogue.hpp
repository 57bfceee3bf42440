#ifndef SEMLINK_CATALOGUE_HPP
#define SEMLINK_CATALOGUE_HPP

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace semlink {

/// The persisted verdict tags. These are file-format vocabulary and stay
/// stable even if the in-memory Verdict type grows.
enum class ProofVerdict { Works, DoesNotWork, WorksAfterRollback };

const char* to_string(ProofVerdict verdict);
std::optional<ProofVerdict> proof_verdict_from_string(const std::string& text);

/// One proof record: which pair was checked, at which revision labels,
/// through which port, with which outcome. (a_id, a_rev, b_id, b_rev, port)
/// is the uniqueness key; aligned revisions are present exactly for
/// works-after-rollback entries.
struct CatalogueEntry {
    std::string a_id;
    std::string a_rev;
    std::string b_id;
    std::string b_rev;
    std::string port;
    ProofVerdict verdict = ProofVerdict::Works;
    std::optional<std::string> aligned_a_rev;
    std::optional<std::string> aligned_b_rev;
    std::string checked_at; // RFC 3339 UTC, e.g. "2024-01-01T00:00:00Z"

    auto key() const { return std::tie(a_id, a_rev, b_id, b_rev, port); }
    bool operator==(const CatalogueEntry&) const = default;
};

/// A deduplicated partner row: with whom a component was proved, through
/// which port, with which outcome.
struct PartnerSummary {
    std::string partner_id;
    std::string port;
    ProofVerdict verdict = ProofVerdict::Works;

    auto operator<=>(const PartnerSummary&) const = default;
};

/// The cross-reference of proved component pairs. Entries stay sorted by
/// key, which makes serialization canonical. Single writer, any number of
/// concurrent readers.
class Catalogue {
  public:
    /// Inserts the entry, replacing any entry with the same key. Throws
    /// Error(MalformedEntry) on empty key fields, a missing/extra alignment,
    /// or a malformed timestamp.
    void record(const CatalogueEntry& entry);

    /// Entries mentioning the two ids in either orientation, sorted by key.
    std::vector<CatalogueEntry> query(const std::string& a_id, const std::string& b_id) const;

    /// Deduplicated partner rows over all entries mentioning `id`.
    std::vector<PartnerSummary> partners(const std::string& id) const;

    const std::vector<CatalogueEntry>& entries() const { return entries_; }
    bool operator==(const Catalogue&) const = default;

  private:
    std::vector<CatalogueEntry> entries_; // sorted by key
};

/// Canonical document form: sorted entries, attributes sorted by name,
/// 2-space indent, UTF-8. load(save(c)) == c entry-wise and save(load(d))
/// == d byte-wise on canonical documents.
std::string save_catalogue(const Catalogue& catalogue);
Catalogue load_catalogue(const std::string& document);

/// File convenience wrappers. save_catalogue_file writes to a temporary
/// sibling and renames it into place; load_catalogue_file treats a missing
/// file as an empty catalogue.
void save_catalogue_file(const Catalogue& catalogue, const std::string& path);
Catalogue load_catalogue_file(const std::string& path);

/// Strict validator/producer for the timestamp format the catalogue uses.
bool is_rfc3339_utc(const std::string& text);
std::string now_rfc3339_utc();

} // namespace semlink

#endif
