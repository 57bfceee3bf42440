#ifndef SEMLINK_ASLT_HPP
#define SEMLINK_ASLT_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace semlink {

/// Node categories of the program-structure tree. Nesting is constrained:
/// packages contain packages, classes and interfaces; classes and interfaces
/// contain methods and fields; methods contain parameters; fields and
/// parameters are leaves.
enum class NodeKind { Package, Class, Interface, Method, Field, Parameter };

const char* to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(const std::string& text);
bool kind_allows_child(NodeKind parent, NodeKind child);

/// One metadata entry. Keys are dot-namespaced ("linkage.provides",
/// "pattern.group"); several entries may share a key and keep their
/// attachment order.
struct MetaEntry {
    std::string key;
    std::string value;

    bool operator==(const MetaEntry&) const = default;
};

struct AsltNode {
    std::string id; // unique within the tree
    NodeKind kind;
    std::string name;
    std::optional<std::string> type_name; // required for method/field/parameter
    std::vector<std::size_t> children;    // indices into Aslt::nodes_, in order
    std::vector<MetaEntry> meta;
    std::optional<std::size_t> parent;
};

/// The annotated program-structure tree. Mutable while a component is being
/// built; treated as frozen afterwards, so any number of readers may share
/// it. Nodes live in one flat arena and are addressed by index internally
/// and by id at the API surface.
class Aslt {
  public:
    /// Appends a node under `parent_id`, or creates the root when
    /// `parent_id` is empty. Supplying `explicit_id` picks the id, otherwise
    /// one is generated. Returns the new node's id.
    std::string add_node(const std::optional<std::string>& parent_id, NodeKind kind,
                         const std::string& name,
                         const std::optional<std::string>& type_name = std::nullopt,
                         const std::optional<std::string>& explicit_id = std::nullopt);

    void attach_meta(const std::string& node_id, const std::string& key,
                     const std::string& value);

    /// Entries on `node_id` whose key equals `key_prefix` or starts with
    /// `key_prefix` + "."; attachment order preserved.
    std::vector<MetaEntry> meta_lookup(const std::string& node_id,
                                       const std::string& key_prefix) const;

    /// Drops every meta entry on `node_id` with the exact key. Used by the
    /// manifest loader to re-materialize derived entries.
    void remove_meta(const std::string& node_id, const std::string& key);

    bool empty() const { return nodes_.empty(); }
    bool has_node(const std::string& node_id) const;
    const AsltNode& node(const std::string& node_id) const;
    const AsltNode& root() const;
    std::size_t size() const { return nodes_.size(); }

    const AsltNode& node_at(std::size_t index) const { return nodes_.at(index); }
    std::size_t index_of(const std::string& node_id) const;

    /// Node ids in depth-first pre-order.
    std::vector<std::string> preorder_ids() const;

    /// Ids of the subtree rooted at `node_id`, including it.
    std::vector<std::string> subtree_ids(const std::string& node_id) const;

    bool operator==(const Aslt& other) const;

  private:
    friend class MaskedView;

    std::vector<AsltNode> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t generated_ = 0;
};

/// A set of declared subtype edges (sub, super) whose transitive closure
/// stays acyclic. Reflexivity is implicit; names unknown to the context are
/// subtype-related only to themselves.
class TypingContext {
  public:
    void declare_inheritance(const std::string& sub, const std::string& super);

    bool is_subtype(const std::string& sub, const std::string& super) const;

    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

    /// Union of two contexts. Throws Error(TypingConflict) when the merged
    /// relation would contain a cycle.
    static TypingContext merged(const TypingContext& a, const TypingContext& b);

    bool operator==(const TypingContext& other) const { return edges_ == other.edges_; }

  private:
    void add_edge_unchecked(const std::string& sub, const std::string& super);

    std::set<std::pair<std::string, std::string>> edges_;
    std::unordered_map<std::string, std::vector<std::string>> supers_;
};

/// A read-only filter over an Aslt that hides whole subtrees. Hidden ids are
/// expanded to descendant closure at construction, so every visible node's
/// ancestors are visible too. Views are cheap to create and freely shareable.
class MaskedView {
  public:
    MaskedView(const Aslt& base, const std::set<std::string>& hidden_roots);

    bool visible(const std::string& node_id) const;

    /// Visible node ids in pre-order; sibling order matches the base tree.
    std::vector<std::string> visible_ids() const;

    /// Visible children of a visible node, in base-tree order.
    std::vector<const AsltNode*> visible_children(const std::string& node_id) const;

    /// meta_lookup restricted to visible nodes; a hidden id is reported as
    /// unknown.
    std::vector<MetaEntry> meta_lookup(const std::string& node_id,
                                       const std::string& key_prefix) const;

    const Aslt& base() const { return *base_; }
    const std::unordered_set<std::string>& hidden() const { return hidden_; }

  private:
    const Aslt* base_;
    std::unordered_set<std::string> hidden_;
};

} // namespace semlink

#endif
