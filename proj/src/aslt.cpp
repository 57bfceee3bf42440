#include "semlink/aslt.hpp"

#include "semlink/errors.hpp"

#include <algorithm>
#include <deque>

namespace semlink {

const char* to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Package: return "package";
    case NodeKind::Class: return "class";
    case NodeKind::Interface: return "interface";
    case NodeKind::Method: return "method";
    case NodeKind::Field: return "field";
    case NodeKind::Parameter: return "parameter";
    }
    return "unknown";
}

std::optional<NodeKind> node_kind_from_string(const std::string& text) {
    if (text == "package") return NodeKind::Package;
    if (text == "class") return NodeKind::Class;
    if (text == "interface") return NodeKind::Interface;
    if (text == "method") return NodeKind::Method;
    if (text == "field") return NodeKind::Field;
    if (text == "parameter") return NodeKind::Parameter;
    return std::nullopt;
}

bool kind_allows_child(NodeKind parent, NodeKind child) {
    switch (parent) {
    case NodeKind::Package:
        return child == NodeKind::Package || child == NodeKind::Class ||
               child == NodeKind::Interface;
    case NodeKind::Class:
    case NodeKind::Interface:
        return child == NodeKind::Method || child == NodeKind::Field;
    case NodeKind::Method:
        return child == NodeKind::Parameter;
    case NodeKind::Field:
    case NodeKind::Parameter:
        return false;
    }
    return false;
}

namespace {

bool kind_requires_type(NodeKind kind) {
    return kind == NodeKind::Method || kind == NodeKind::Field || kind == NodeKind::Parameter;
}

} // namespace

std::string Aslt::add_node(const std::optional<std::string>& parent_id, NodeKind kind,
                           const std::string& name,
                           const std::optional<std::string>& type_name,
                           const std::optional<std::string>& explicit_id) {
    if (name.empty())
        throw Error(ErrorKind::SchemaViolation, "node name must be non-empty");
    if (kind_requires_type(kind)) {
        if (!type_name || type_name->empty())
            throw Error(ErrorKind::SchemaViolation,
                        std::string("a ") + to_string(kind) + " node needs a type");
    } else if (type_name) {
        throw Error(ErrorKind::SchemaViolation,
                    std::string("a ") + to_string(kind) + " node cannot carry a type");
    }

    std::optional<std::size_t> parent_index;
    if (parent_id) {
        auto it = index_.find(*parent_id);
        if (it == index_.end())
            throw Error(ErrorKind::UnknownParent, "no node with id '" + *parent_id + "'");
        parent_index = it->second;
        if (!kind_allows_child(nodes_[*parent_index].kind, kind))
            throw Error(ErrorKind::IllegalChildKind,
                        std::string(to_string(nodes_[*parent_index].kind)) +
                            " cannot contain " + to_string(kind));
    } else if (!nodes_.empty()) {
        throw Error(ErrorKind::SchemaViolation, "tree already has a root");
    }

    std::string id;
    if (explicit_id) {
        if (explicit_id->empty())
            throw Error(ErrorKind::SchemaViolation, "node id must be non-empty");
        if (index_.count(*explicit_id))
            throw Error(ErrorKind::DuplicateId, "id '" + *explicit_id + "' already used");
        id = *explicit_id;
    } else {
        do {
            id = "n" + std::to_string(++generated_);
        } while (index_.count(id));
    }

    AsltNode node;
    node.id = id;
    node.kind = kind;
    node.name = name;
    node.type_name = type_name;
    node.parent = parent_index;

    std::size_t index = nodes_.size();
    nodes_.push_back(std::move(node));
    index_.emplace(id, index);
    if (parent_index)
        nodes_[*parent_index].children.push_back(index);
    return id;
}

void Aslt::attach_meta(const std::string& node_id, const std::string& key,
                       const std::string& value) {
    if (key.empty())
        throw Error(ErrorKind::EmptyKey, "meta key must be non-empty");
    auto it = index_.find(node_id);
    if (it == index_.end())
        throw Error(ErrorKind::UnknownNode, "no node with id '" + node_id + "'");
    nodes_[it->second].meta.push_back({key, value});
}

namespace {

bool prefix_matches(const std::string& key, const std::string& prefix) {
    if (key == prefix)
        return true;
    return key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0 &&
           key[prefix.size()] == '.';
}

} // namespace

std::vector<MetaEntry> Aslt::meta_lookup(const std::string& node_id,
                                         const std::string& key_prefix) const {
    const AsltNode& n = node(node_id);
    std::vector<MetaEntry> out;
    for (const MetaEntry& entry : n.meta)
        if (prefix_matches(entry.key, key_prefix))
            out.push_back(entry);
    return out;
}

void Aslt::remove_meta(const std::string& node_id, const std::string& key) {
    auto it = index_.find(node_id);
    if (it == index_.end())
        throw Error(ErrorKind::UnknownNode, "no node with id '" + node_id + "'");
    auto& meta = nodes_[it->second].meta;
    std::erase_if(meta, [&](const MetaEntry& entry) { return entry.key == key; });
}

bool Aslt::has_node(const std::string& node_id) const {
    return index_.count(node_id) != 0;
}

const AsltNode& Aslt::node(const std::string& node_id) const {
    auto it = index_.find(node_id);
    if (it == index_.end())
        throw Error(ErrorKind::UnknownNode, "no node with id '" + node_id + "'");
    return nodes_[it->second];
}

const AsltNode& Aslt::root() const {
    if (nodes_.empty())
        throw Error(ErrorKind::UnknownNode, "tree is empty");
    return nodes_.front();
}

std::size_t Aslt::index_of(const std::string& node_id) const {
    auto it = index_.find(node_id);
    if (it == index_.end())
        throw Error(ErrorKind::UnknownNode, "no node with id '" + node_id + "'");
    return it->second;
}

std::vector<std::string> Aslt::preorder_ids() const {
    std::vector<std::string> out;
    if (nodes_.empty())
        return out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t index = stack.back();
        stack.pop_back();
        const AsltNode& n = nodes_[index];
        out.push_back(n.id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
            stack.push_back(*it);
    }
    return out;
}

std::vector<std::string> Aslt::subtree_ids(const std::string& node_id) const {
    std::vector<std::string> out;
    std::vector<std::size_t> stack{index_of(node_id)};
    while (!stack.empty()) {
        std::size_t index = stack.back();
        stack.pop_back();
        const AsltNode& n = nodes_[index];
        out.push_back(n.id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
            stack.push_back(*it);
    }
    return out;
}

namespace {

bool nodes_equal(const Aslt& a, const AsltNode& na, const Aslt& b, const AsltNode& nb) {
    if (na.id != nb.id || na.kind != nb.kind || na.name != nb.name ||
        na.type_name != nb.type_name || na.meta != nb.meta ||
        na.children.size() != nb.children.size())
        return false;
    for (std::size_t i = 0; i < na.children.size(); ++i)
        if (!nodes_equal(a, a.node_at(na.children[i]), b, b.node_at(nb.children[i])))
            return false;
    return true;
}

} // namespace

bool Aslt::operator==(const Aslt& other) const {
    if (nodes_.empty() || other.nodes_.empty())
        return nodes_.empty() && other.nodes_.empty();
    return nodes_equal(*this, root(), other, other.root());
}

void TypingContext::declare_inheritance(const std::string& sub, const std::string& super) {
    if (sub.empty() || super.empty())
        throw Error(ErrorKind::SchemaViolation, "inheritance edge names must be non-empty");
    if (sub == super)
        throw Error(ErrorKind::SelfInheritance, "'" + sub + "' cannot inherit from itself");
    if (is_subtype(super, sub))
        throw Error(ErrorKind::InheritanceCycle,
                    "edge (" + sub + ", " + super + ") would close a cycle");
    add_edge_unchecked(sub, super);
}

void TypingContext::add_edge_unchecked(const std::string& sub, const std::string& super) {
    if (edges_.emplace(sub, super).second)
        supers_[sub].push_back(super);
}

bool TypingContext::is_subtype(const std::string& sub, const std::string& super) const {
    if (sub == super)
        return true;
    std::unordered_set<std::string> seen{sub};
    std::deque<std::string> queue{sub};
    while (!queue.empty()) {
        auto it = supers_.find(queue.front());
        queue.pop_front();
        if (it == supers_.end())
            continue;
        for (const std::string& next : it->second) {
            if (next == super)
                return true;
            if (seen.insert(next).second)
                queue.push_back(next);
        }
    }
    return false;
}

TypingContext TypingContext::merged(const TypingContext& a, const TypingContext& b) {
    TypingContext out = a;
    for (const auto& [sub, super] : b.edges_) {
        if (sub == super || out.is_subtype(super, sub))
            throw Error(ErrorKind::TypingConflict,
                        "merged inheritance relations contain a cycle through (" + sub +
                            ", " + super + ")");
        out.add_edge_unchecked(sub, super);
    }
    return out;
}

MaskedView::MaskedView(const Aslt& base, const std::set<std::string>& hidden_roots)
    : base_(&base) {
    for (const std::string& id : hidden_roots)
        for (const std::string& descendant : base.subtree_ids(id))
            hidden_.insert(descendant);
}

bool MaskedView::visible(const std::string& node_id) const {
    return base_->has_node(node_id) && !hidden_.count(node_id);
}

std::vector<std::string> MaskedView::visible_ids() const {
    std::vector<std::string> out;
    for (const std::string& id : base_->preorder_ids())
        if (!hidden_.count(id))
            out.push_back(id);
    return out;
}

std::vector<const AsltNode*> MaskedView::visible_children(const std::string& node_id) const {
    if (!visible(node_id))
        throw Error(ErrorKind::UnknownNode, "no visible node with id '" + node_id + "'");
    std::vector<const AsltNode*> out;
    for (std::size_t child : base_->node(node_id).children) {
        const AsltNode& n = base_->node_at(child);
        if (!hidden_.count(n.id))
            out.push_back(&n);
    }
    return out;
}

std::vector<MetaEntry> MaskedView::meta_lookup(const std::string& node_id,
                                               const std::string& key_prefix) const {
    if (!visible(node_id))
        throw Error(ErrorKind::UnknownNode, "no visible node with id '" + node_id + "'");
    return base_->meta_lookup(node_id, key_prefix);
}

} // namespace semlink
