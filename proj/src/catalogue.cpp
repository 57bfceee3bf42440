#include "semlink/catalogue.hpp"

#include "semlink/errors.hpp"
#include "semlink/xml.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>

namespace semlink {

const char* to_string(ProofVerdict verdict) {
    switch (verdict) {
    case ProofVerdict::Works: return "works";
    case ProofVerdict::DoesNotWork: return "does-not-work";
    case ProofVerdict::WorksAfterRollback: return "works-after-rollback";
    }
    return "unknown";
}

std::optional<ProofVerdict> proof_verdict_from_string(const std::string& text) {
    if (text == "works") return ProofVerdict::Works;
    if (text == "does-not-work") return ProofVerdict::DoesNotWork;
    if (text == "works-after-rollback") return ProofVerdict::WorksAfterRollback;
    return std::nullopt;
}

bool is_rfc3339_utc(const std::string& text) {
    // Fixed canonical shape: YYYY-MM-DDThh:mm:ssZ
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z')
        return false;
    auto digits = [&](std::size_t from, std::size_t count, int low, int high) {
        int value = 0;
        for (std::size_t i = from; i < from + count; ++i) {
            if (text[i] < '0' || text[i] > '9')
                return false;
            value = value * 10 + (text[i] - '0');
        }
        return value >= low && value <= high;
    };
    return digits(0, 4, 0, 9999) && digits(5, 2, 1, 12) && digits(8, 2, 1, 31) &&
           digits(11, 2, 0, 23) && digits(14, 2, 0, 59) && digits(17, 2, 0, 60);
}

std::string now_rfc3339_utc() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ", utc.tm_year + 1900,
                  utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec);
    return buffer;
}

namespace {

void validate_entry(const CatalogueEntry& entry) {
    if (entry.a_id.empty() || entry.b_id.empty() || entry.a_rev.empty() ||
        entry.b_rev.empty() || entry.port.empty())
        throw Error(ErrorKind::MalformedEntry, "entry key fields must be non-empty");
    const bool rollback = entry.verdict == ProofVerdict::WorksAfterRollback;
    const bool has_alignment = entry.aligned_a_rev.has_value() && entry.aligned_b_rev.has_value();
    const bool has_any = entry.aligned_a_rev.has_value() || entry.aligned_b_rev.has_value();
    if (rollback && !has_alignment)
        throw Error(ErrorKind::MalformedEntry,
                    "a works-after-rollback entry needs both aligned revisions");
    if (!rollback && has_any)
        throw Error(ErrorKind::MalformedEntry,
                    "aligned revisions are only valid for works-after-rollback entries");
    if (rollback && (entry.aligned_a_rev->empty() || entry.aligned_b_rev->empty()))
        throw Error(ErrorKind::MalformedEntry, "aligned revision labels must be non-empty");
    if (!is_rfc3339_utc(entry.checked_at))
        throw Error(ErrorKind::MalformedEntry,
                    "'" + entry.checked_at + "' is not a UTC RFC 3339 timestamp");
}

} // namespace

void Catalogue::record(const CatalogueEntry& entry) {
    validate_entry(entry);
    auto position = std::lower_bound(
        entries_.begin(), entries_.end(), entry,
        [](const CatalogueEntry& a, const CatalogueEntry& b) { return a.key() < b.key(); });
    if (position != entries_.end() && position->key() == entry.key())
        *position = entry;
    else
        entries_.insert(position, entry);
}

std::vector<CatalogueEntry> Catalogue::query(const std::string& a_id,
                                             const std::string& b_id) const {
    std::vector<CatalogueEntry> out;
    for (const CatalogueEntry& entry : entries_) {
        const bool forward = entry.a_id == a_id && entry.b_id == b_id;
        const bool reverse = entry.a_id == b_id && entry.b_id == a_id;
        if (forward || reverse)
            out.push_back(entry);
    }
    return out; // entries_ is key-sorted already
}

std::vector<PartnerSummary> Catalogue::partners(const std::string& id) const {
    std::set<PartnerSummary> rows;
    for (const CatalogueEntry& entry : entries_) {
        if (entry.a_id == id)
            rows.insert({entry.b_id, entry.port, entry.verdict});
        else if (entry.b_id == id)
            rows.insert({entry.a_id, entry.port, entry.verdict});
    }
    return {rows.begin(), rows.end()};
}

std::string save_catalogue(const Catalogue& catalogue) {
    xml::Element root;
    root.name = "catalogue";
    for (const CatalogueEntry& entry : catalogue.entries()) {
        xml::Element proof;
        proof.name = "proof";
        proof.attributes = {{"a", entry.a_id},       {"a-rev", entry.a_rev},
                            {"b", entry.b_id},       {"b-rev", entry.b_rev},
                            {"port", entry.port},    {"verdict", to_string(entry.verdict)},
                            {"checked-at", entry.checked_at}};
        if (entry.aligned_a_rev)
            proof.attributes.emplace_back("aligned-a-rev", *entry.aligned_a_rev);
        if (entry.aligned_b_rev)
            proof.attributes.emplace_back("aligned-b-rev", *entry.aligned_b_rev);
        root.children.push_back(std::move(proof));
    }
    return xml::write_document(root);
}

Catalogue load_catalogue(const std::string& document) {
    xml::Element root = xml::parse_document(document);
    if (root.name != "catalogue")
        throw Error(ErrorKind::SchemaViolation,
                    "expected <catalogue> as the document element, found <" + root.name + ">");
    if (!root.attributes.empty())
        throw Error(ErrorKind::SchemaViolation, "<catalogue> takes no attributes");

    Catalogue catalogue;
    std::size_t loaded = 0;
    for (const xml::Element& child : root.children) {
        if (child.name != "proof")
            throw Error(ErrorKind::SchemaViolation, "line " + std::to_string(child.line) +
                                                        ": <catalogue> cannot contain <" +
                                                        child.name + ">");
        CatalogueEntry entry;
        for (const auto& [name, value] : child.attributes) {
            if (name == "a") entry.a_id = value;
            else if (name == "a-rev") entry.a_rev = value;
            else if (name == "b") entry.b_id = value;
            else if (name == "b-rev") entry.b_rev = value;
            else if (name == "port") entry.port = value;
            else if (name == "checked-at") entry.checked_at = value;
            else if (name == "aligned-a-rev") entry.aligned_a_rev = value;
            else if (name == "aligned-b-rev") entry.aligned_b_rev = value;
            else if (name == "verdict") {
                std::optional<ProofVerdict> verdict = proof_verdict_from_string(value);
                if (!verdict)
                    throw Error(ErrorKind::SchemaViolation,
                                "line " + std::to_string(child.line) + ": unknown verdict '" +
                                    value + "'");
                entry.verdict = *verdict;
            } else {
                throw Error(ErrorKind::SchemaViolation, "line " + std::to_string(child.line) +
                                                            ": <proof> has unknown attribute '" +
                                                            name + "'");
            }
        }
        try {
            catalogue.record(entry);
        } catch (const Error& error) {
            throw Error(ErrorKind::SchemaViolation,
                        "line " + std::to_string(child.line) + ": " + error.what());
        }
        if (catalogue.entries().size() == loaded)
            throw Error(ErrorKind::SchemaViolation,
                        "line " + std::to_string(child.line) + ": duplicate proof key");
        loaded = catalogue.entries().size();
    }
    return catalogue;
}

void save_catalogue_file(const Catalogue& catalogue, const std::string& path) {
    namespace fs = std::filesystem;
    const std::string document = save_catalogue(catalogue);
    fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::IoError, "cannot write '" + temp.string() + "'");
        out << document;
        if (!out.flush())
            throw Error(ErrorKind::IoError, "cannot write '" + temp.string() + "'");
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec)
        throw Error(ErrorKind::IoError,
                    "cannot replace '" + path + "': " + ec.message());
}

Catalogue load_catalogue_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        return Catalogue{}; // absent file = empty catalogue
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
    std::string document((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_catalogue(document);
}

} // namespace semlink
