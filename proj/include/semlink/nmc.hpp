#ifndef SEMLINK_NMC_HPP
#define SEMLINK_NMC_HPP

#include "semlink/aslt.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace semlink {

/// A method contract: name, parameter types in call order, return type
/// ("void" allowed).
struct Signature {
    std::string name;
    std::vector<std::string> params;
    std::string return_type;

    std::size_t arity() const { return params.size(); }
    auto operator<=>(const Signature&) const = default;
};

enum class PortDirection { Provided, Required };

/// One linkage-control port. Provided ports reference the interface node
/// they expose and carry signatures derived from its visible methods;
/// required ports declare their expected signatures explicitly. Signature
/// lists are kept sorted and duplicate-free.
struct Port {
    PortDirection direction = PortDirection::Provided;
    std::string interface_name;
    std::vector<Signature> signatures;
    std::optional<std::string> source_node;

    bool operator==(const Port&) const = default;
};

/// One revision: the stored tree minus the masked subtrees. Ordinal 0 is the
/// oldest; the newest revision's mask is empty because the stored tree *is*
/// the newest revision.
struct Revision {
    std::size_t ordinal = 0;
    std::string label;
    std::set<std::string> hidden_roots;

    bool operator==(const Revision&) const = default;
};

/// A component: id, domain tag, annotated structure tree, declared typing
/// relation, linkage-control ports, and its revision history. Frozen after
/// finalize_nmc/parse_manifest; all reads are then concurrency-safe.
struct Nmc {
    std::string id;
    std::string domain;
    Aslt tree;
    TypingContext typing;
    std::vector<Port> ports;         // provided first, then required
    std::vector<Revision> revisions; // ascending ordinal; back() is current

    std::size_t current_ordinal() const;
    const Revision& revision(std::size_t ordinal) const;
    const std::string& label_at(std::size_t ordinal) const;

    bool operator==(const Nmc&) const = default;
};

/// A component pinned to one revision: the masked tree plus the ports that
/// survive the mask, with provided signatures re-derived from the visible
/// nodes.
struct ComponentView {
    const Nmc* nmc = nullptr;
    std::size_t ordinal = 0;
    MaskedView view;
    std::vector<Port> effective_ports;

    const Port* find_port(PortDirection direction, const std::string& interface_name) const;
};

/// Validates every component invariant, derives provided-port signatures
/// from the tree (checking any redundantly declared ones for drift),
/// normalizes port order to provided-then-required, and mirrors one
/// "linkage.provides"/"linkage.requires" meta entry per port onto the root
/// node. Programmatic construction calls this once after filling the fields;
/// the manifest loader runs it as its last step.
void finalize_nmc(Nmc& nmc);

/// Signatures exposed by an interface node under a mask: one per visible
/// method child, parameters restricted to visible parameter nodes.
std::vector<Signature> derive_signatures(const MaskedView& view,
                                         const std::string& interface_node_id);

ComponentView at_revision(const Nmc& nmc, std::size_t ordinal);

/// Steps between `ordinal` and the current revision; 0 for the current one.
std::size_t rollback_distance(const Nmc& nmc, std::size_t ordinal);

Nmc parse_manifest(const std::string& document);

/// Canonical manifest text: fixed element order, attributes sorted by name,
/// 2-space indent. Byte-deterministic, and a fixed point of parse → serialize.
std::string serialize_manifest(const Nmc& nmc);

} // namespace semlink

#endif
