#include "semlink/nmc.hpp"

#include "semlink/errors.hpp"
#include "semlink/xml.hpp"

#include <algorithm>
#include <map>

namespace semlink {

namespace {

constexpr const char* kProvidesKey = "linkage.provides";
constexpr const char* kRequiresKey = "linkage.requires";

[[noreturn]] void schema_error(const std::string& message, int line = 0) {
    if (line > 0)
        throw Error(ErrorKind::SchemaViolation, "line " + std::to_string(line) + ": " + message);
    throw Error(ErrorKind::SchemaViolation, message);
}

void sort_and_dedup(std::vector<Signature>& signatures) {
    std::sort(signatures.begin(), signatures.end());
    signatures.erase(std::unique(signatures.begin(), signatures.end()), signatures.end());
}

void validate_signature(const Signature& signature, const std::string& context) {
    if (signature.name.empty())
        schema_error("signature name must be non-empty in " + context);
    if (signature.return_type.empty())
        schema_error("signature '" + signature.name + "' needs a return type in " + context);
    for (const std::string& param : signature.params)
        if (param.empty())
            schema_error("signature '" + signature.name + "' has an empty parameter type in " +
                         context);
}

} // namespace

std::size_t Nmc::current_ordinal() const {
    if (revisions.empty())
        throw Error(ErrorKind::UnknownRevision, "component '" + id + "' has no revisions");
    return revisions.size() - 1;
}

const Revision& Nmc::revision(std::size_t ordinal) const {
    if (revisions.empty() || ordinal >= revisions.size())
        throw Error(ErrorKind::UnknownRevision,
                    "component '" + id + "' has no revision " + std::to_string(ordinal));
    return revisions[ordinal];
}

const std::string& Nmc::label_at(std::size_t ordinal) const {
    return revision(ordinal).label;
}

const Port* ComponentView::find_port(PortDirection direction,
                                     const std::string& interface_name) const {
    for (const Port& port : effective_ports)
        if (port.direction == direction && port.interface_name == interface_name)
            return &port;
    return nullptr;
}

std::vector<Signature> derive_signatures(const MaskedView& view,
                                         const std::string& interface_node_id) {
    std::vector<Signature> out;
    for (const AsltNode* child : view.visible_children(interface_node_id)) {
        if (child->kind != NodeKind::Method)
            continue;
        Signature signature;
        signature.name = child->name;
        signature.return_type = child->type_name.value_or("void");
        for (std::size_t param_index : child->children) {
            const AsltNode& param = view.base().node_at(param_index);
            if (param.kind == NodeKind::Parameter && view.visible(param.id))
                signature.params.push_back(param.type_name.value_or(""));
        }
        out.push_back(std::move(signature));
    }
    sort_and_dedup(out);
    return out;
}

void finalize_nmc(Nmc& nmc) {
    if (nmc.id.empty())
        schema_error("component id must be non-empty");
    if (nmc.domain.empty())
        schema_error("component domain must be non-empty");
    if (nmc.tree.empty())
        schema_error("component '" + nmc.id + "' has an empty tree");

    // Revision history: consecutive ordinals 0..N, unique labels, newest
    // mask empty, every masked id resolvable.
    if (nmc.revisions.empty())
        schema_error("component '" + nmc.id + "' needs at least one revision");
    std::sort(nmc.revisions.begin(), nmc.revisions.end(),
              [](const Revision& a, const Revision& b) { return a.ordinal < b.ordinal; });
    std::set<std::string> labels;
    for (std::size_t i = 0; i < nmc.revisions.size(); ++i) {
        const Revision& revision = nmc.revisions[i];
        if (revision.ordinal != i)
            schema_error("revision ordinals of '" + nmc.id + "' are not consecutive from 0");
        if (revision.label.empty())
            schema_error("revision " + std::to_string(i) + " of '" + nmc.id + "' has no label");
        if (!labels.insert(revision.label).second)
            schema_error("duplicate revision label '" + revision.label + "' in '" + nmc.id + "'");
        for (const std::string& hidden : revision.hidden_roots)
            if (!nmc.tree.has_node(hidden))
                schema_error("revision '" + revision.label + "' of '" + nmc.id +
                             "' masks unknown node '" + hidden + "'");
    }
    if (!nmc.revisions.back().hidden_roots.empty())
        schema_error("the newest revision of '" + nmc.id + "' must have an empty mask");

    // Ports: derive provided signatures from the stored (= newest) tree and
    // check any redundantly declared ones against the derivation.
    MaskedView unmasked(nmc.tree, {});
    std::set<std::pair<PortDirection, std::string>> seen_ports;
    for (Port& port : nmc.ports) {
        if (port.interface_name.empty())
            schema_error("a port of '" + nmc.id + "' has an empty interface name");
        if (!seen_ports.emplace(port.direction, port.interface_name).second)
            schema_error("duplicate " +
                         std::string(port.direction == PortDirection::Provided ? "provided"
                                                                               : "required") +
                         " port '" + port.interface_name + "' in '" + nmc.id + "'");
        if (port.direction == PortDirection::Provided) {
            if (!port.source_node)
                schema_error("provided port '" + port.interface_name + "' of '" + nmc.id +
                             "' names no source node");
            if (!nmc.tree.has_node(*port.source_node))
                schema_error("provided port '" + port.interface_name + "' of '" + nmc.id +
                             "' references unknown node '" + *port.source_node + "'");
            if (nmc.tree.node(*port.source_node).kind != NodeKind::Interface)
                schema_error("provided port '" + port.interface_name + "' of '" + nmc.id +
                             "' must reference an interface node");
            std::vector<Signature> derived = derive_signatures(unmasked, *port.source_node);
            if (!port.signatures.empty()) {
                sort_and_dedup(port.signatures);
                if (port.signatures != derived)
                    throw Error(ErrorKind::SignatureDrift,
                                "declared signatures of provided port '" + port.interface_name +
                                    "' in '" + nmc.id + "' differ from the tree");
            }
            port.signatures = std::move(derived);
        } else {
            port.source_node.reset();
            for (const Signature& signature : port.signatures)
                validate_signature(signature, "required port '" + port.interface_name + "' of '" +
                                                  nmc.id + "'");
            sort_and_dedup(port.signatures);
        }
    }

    // Canonical port order: provided first, then required, keeping the
    // declaration order within each direction.
    std::stable_sort(nmc.ports.begin(), nmc.ports.end(), [](const Port& a, const Port& b) {
        return a.direction == PortDirection::Provided && b.direction == PortDirection::Required;
    });

    // Mirror the ports as meta entries on the root so linkage control stays
    // discoverable through the tree alone.
    const std::string root_id = nmc.tree.root().id;
    nmc.tree.remove_meta(root_id, kProvidesKey);
    nmc.tree.remove_meta(root_id, kRequiresKey);
    for (const Port& port : nmc.ports)
        nmc.tree.attach_meta(root_id,
                             port.direction == PortDirection::Provided ? kProvidesKey
                                                                       : kRequiresKey,
                             port.interface_name);
}

ComponentView at_revision(const Nmc& nmc, std::size_t ordinal) {
    const Revision& revision = nmc.revision(ordinal);

    ComponentView result{&nmc, ordinal, MaskedView(nmc.tree, revision.hidden_roots), {}};
    const bool root_visible = result.view.visible(nmc.tree.root().id);
    for (const Port& port : nmc.ports) {
        if (!root_visible)
            break; // the declaring meta node is hidden: no ports at all
        if (port.direction == PortDirection::Provided) {
            if (!result.view.visible(*port.source_node))
                continue;
            Port effective = port;
            effective.signatures = derive_signatures(result.view, *port.source_node);
            result.effective_ports.push_back(std::move(effective));
        } else {
            result.effective_ports.push_back(port);
        }
    }
    return result;
}

std::size_t rollback_distance(const Nmc& nmc, std::size_t ordinal) {
    return nmc.current_ordinal() - nmc.revision(ordinal).ordinal;
}

//=== manifest ingestion =====================================================

namespace {

const std::string& require_attribute(const xml::Element& element, const std::string& name) {
    const std::string* value = element.find_attribute(name);
    if (!value)
        schema_error("<" + element.name + "> is missing attribute '" + name + "'", element.line);
    return *value;
}

void reject_unknown_attributes(const xml::Element& element,
                               std::initializer_list<const char*> allowed) {
    for (const auto& [name, _] : element.attributes) {
        bool known = false;
        for (const char* candidate : allowed)
            known = known || name == candidate;
        if (!known)
            schema_error("<" + element.name + "> has unknown attribute '" + name + "'",
                         element.line);
    }
}

[[noreturn]] void unknown_element(const xml::Element& parent, const xml::Element& child) {
    schema_error("<" + parent.name + "> cannot contain <" + child.name + ">", child.line);
}

std::size_t parse_ordinal(const std::string& text, int line) {
    if (text.empty() || text.size() > 9 ||
        text.find_first_not_of("0123456789") != std::string::npos)
        schema_error("'" + text + "' is not a revision ordinal", line);
    return static_cast<std::size_t>(std::stoull(text));
}

void load_tree_node(Aslt& tree, const std::optional<std::string>& parent_id,
                    const xml::Element& element) {
    reject_unknown_attributes(element, {"id", "kind", "name", "type"});
    const std::string& id = require_attribute(element, "id");
    const std::string& kind_text = require_attribute(element, "kind");
    const std::string& name = require_attribute(element, "name");
    std::optional<NodeKind> kind = node_kind_from_string(kind_text);
    if (!kind)
        schema_error("unknown node kind '" + kind_text + "'", element.line);
    std::optional<std::string> type_name;
    if (const std::string* type = element.find_attribute("type"))
        type_name = *type;

    try {
        tree.add_node(parent_id, *kind, name, type_name, id);
    } catch (const Error& error) {
        schema_error(error.what(), element.line);
    }

    for (const xml::Element& child : element.children) {
        if (child.name == "node") {
            load_tree_node(tree, id, child);
        } else if (child.name == "meta") {
            reject_unknown_attributes(child, {"key", "value"});
            const std::string& key = require_attribute(child, "key");
            const std::string& value = require_attribute(child, "value");
            try {
                tree.attach_meta(id, key, value);
            } catch (const Error& error) {
                schema_error(error.what(), child.line);
            }
        } else {
            unknown_element(element, child);
        }
    }
}

Signature load_signature(const xml::Element& element) {
    reject_unknown_attributes(element, {"name", "returns"});
    Signature signature;
    signature.name = require_attribute(element, "name");
    signature.return_type = require_attribute(element, "returns");
    for (const xml::Element& child : element.children) {
        if (child.name != "param")
            unknown_element(element, child);
        reject_unknown_attributes(child, {"type"});
        signature.params.push_back(require_attribute(child, "type"));
    }
    return signature;
}

void load_linkage_control(Nmc& nmc, const xml::Element& element) {
    for (const xml::Element& child : element.children) {
        Port port;
        if (child.name == "provided") {
            reject_unknown_attributes(child, {"interface", "node"});
            port.direction = PortDirection::Provided;
            port.interface_name = require_attribute(child, "interface");
            port.source_node = require_attribute(child, "node");
            for (const xml::Element& declared : child.children) {
                if (declared.name != "signature")
                    unknown_element(child, declared);
                port.signatures.push_back(load_signature(declared));
            }
        } else if (child.name == "required") {
            reject_unknown_attributes(child, {"interface"});
            port.direction = PortDirection::Required;
            port.interface_name = require_attribute(child, "interface");
            for (const xml::Element& declared : child.children) {
                if (declared.name != "signature")
                    unknown_element(child, declared);
                port.signatures.push_back(load_signature(declared));
            }
        } else {
            unknown_element(element, child);
        }
        nmc.ports.push_back(std::move(port));
    }
}

void load_revisions(Nmc& nmc, const xml::Element& element) {
    for (const xml::Element& child : element.children) {
        if (child.name != "revision")
            unknown_element(element, child);
        reject_unknown_attributes(child, {"ordinal", "label"});
        Revision revision;
        revision.ordinal = parse_ordinal(require_attribute(child, "ordinal"), child.line);
        revision.label = require_attribute(child, "label");
        for (const xml::Element& masked : child.children) {
            if (masked.name != "masked")
                unknown_element(child, masked);
            reject_unknown_attributes(masked, {"node"});
            revision.hidden_roots.insert(require_attribute(masked, "node"));
        }
        nmc.revisions.push_back(std::move(revision));
    }
}

void load_inheritance(Nmc& nmc, const xml::Element& element) {
    for (const xml::Element& child : element.children) {
        if (child.name != "edge")
            unknown_element(element, child);
        reject_unknown_attributes(child, {"sub", "super"});
        try {
            nmc.typing.declare_inheritance(require_attribute(child, "sub"),
                                           require_attribute(child, "super"));
        } catch (const Error& error) {
            if (error.kind() == ErrorKind::SchemaViolation)
                throw;
            schema_error(error.what(), child.line); // self edge or cycle
        }
    }
}

} // namespace

Nmc parse_manifest(const std::string& document) {
    xml::Element root = xml::parse_document(document);
    if (root.name != "nmc")
        schema_error("expected <nmc> as the document element, found <" + root.name + ">",
                     root.line);
    reject_unknown_attributes(root, {"id", "domain"});

    Nmc nmc;
    nmc.id = require_attribute(root, "id");
    nmc.domain = require_attribute(root, "domain");

    const xml::Element* aslt_element = nullptr;
    bool seen_inheritance = false, seen_linkage = false, seen_revisions = false;
    for (const xml::Element& child : root.children) {
        if (child.name == "aslt") {
            if (aslt_element)
                schema_error("duplicate <aslt> section", child.line);
            aslt_element = &child;
            if (child.children.size() != 1 || child.children[0].name != "node")
                schema_error("<aslt> must contain exactly one root <node>", child.line);
            load_tree_node(nmc.tree, std::nullopt, child.children[0]);
        } else if (child.name == "inheritance") {
            if (seen_inheritance)
                schema_error("duplicate <inheritance> section", child.line);
            seen_inheritance = true;
            load_inheritance(nmc, child);
        } else if (child.name == "linkage-control") {
            if (seen_linkage)
                schema_error("duplicate <linkage-control> section", child.line);
            seen_linkage = true;
            load_linkage_control(nmc, child);
        } else if (child.name == "revisions") {
            if (seen_revisions)
                schema_error("duplicate <revisions> section", child.line);
            seen_revisions = true;
            load_revisions(nmc, child);
        } else {
            unknown_element(root, child);
        }
    }
    if (!aslt_element)
        schema_error("manifest has no <aslt> section", root.line);
    if (!seen_revisions)
        schema_error("manifest has no <revisions> section", root.line);

    finalize_nmc(nmc);
    return nmc;
}

//=== canonical serialization ================================================

namespace {

xml::Element node_to_xml(const Aslt& tree, const AsltNode& node) {
    xml::Element element;
    element.name = "node";
    element.attributes = {{"id", node.id}, {"kind", to_string(node.kind)}, {"name", node.name}};
    if (node.type_name)
        element.attributes.emplace_back("type", *node.type_name);
    for (std::size_t child : node.children)
        element.children.push_back(node_to_xml(tree, tree.node_at(child)));
    for (const MetaEntry& entry : node.meta) {
        xml::Element meta;
        meta.name = "meta";
        meta.attributes = {{"key", entry.key}, {"value", entry.value}};
        element.children.push_back(std::move(meta));
    }
    return element;
}

xml::Element signature_to_xml(const Signature& signature) {
    xml::Element element;
    element.name = "signature";
    element.attributes = {{"name", signature.name}, {"returns", signature.return_type}};
    for (const std::string& param : signature.params) {
        xml::Element param_element;
        param_element.name = "param";
        param_element.attributes = {{"type", param}};
        element.children.push_back(std::move(param_element));
    }
    return element;
}

} // namespace

std::string serialize_manifest(const Nmc& nmc) {
    xml::Element root;
    root.name = "nmc";
    root.attributes = {{"id", nmc.id}, {"domain", nmc.domain}};

    xml::Element aslt;
    aslt.name = "aslt";
    aslt.children.push_back(node_to_xml(nmc.tree, nmc.tree.root()));
    root.children.push_back(std::move(aslt));

    if (!nmc.typing.edges().empty()) {
        xml::Element inheritance;
        inheritance.name = "inheritance";
        for (const auto& [sub, super] : nmc.typing.edges()) {
            xml::Element edge;
            edge.name = "edge";
            edge.attributes = {{"sub", sub}, {"super", super}};
            inheritance.children.push_back(std::move(edge));
        }
        root.children.push_back(std::move(inheritance));
    }

    if (!nmc.ports.empty()) {
        xml::Element linkage;
        linkage.name = "linkage-control";
        for (const Port& port : nmc.ports) {
            xml::Element port_element;
            if (port.direction == PortDirection::Provided) {
                // Signatures are derived from the tree, so they are not
                // repeated here.
                port_element.name = "provided";
                port_element.attributes = {{"interface", port.interface_name},
                                           {"node", *port.source_node}};
            } else {
                port_element.name = "required";
                port_element.attributes = {{"interface", port.interface_name}};
                for (const Signature& signature : port.signatures)
                    port_element.children.push_back(signature_to_xml(signature));
            }
            linkage.children.push_back(std::move(port_element));
        }
        root.children.push_back(std::move(linkage));
    }

    xml::Element revisions;
    revisions.name = "revisions";
    for (auto it = nmc.revisions.rbegin(); it != nmc.revisions.rend(); ++it) {
        xml::Element revision;
        revision.name = "revision";
        revision.attributes = {{"ordinal", std::to_string(it->ordinal)}, {"label", it->label}};
        for (const std::string& hidden : it->hidden_roots) {
            xml::Element masked;
            masked.name = "masked";
            masked.attributes = {{"node", hidden}};
            revision.children.push_back(std::move(masked));
        }
        revisions.children.push_back(std::move(revision));
    }
    root.children.push_back(std::move(revisions));

    return xml::write_document(root);
}

} // namespace semlink
