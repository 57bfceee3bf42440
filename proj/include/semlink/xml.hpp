#ifndef SEMLINK_XML_HPP
#define SEMLINK_XML_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semlink::xml {

/// Element-and-attribute XML subset used by every file format in this
/// project (manifests, applications, catalogues). Text content other than
/// inter-element whitespace is rejected; comments and the XML declaration
/// are accepted and dropped.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes; // document order
    std::vector<Element> children;
    int line = 0; // 1-based line of the opening tag, for diagnostics

    const std::string* find_attribute(const std::string& attr_name) const;
    bool operator==(const Element& other) const;
};

/// Parses a complete document and returns its root element.
/// Throws Error(MalformedDocument) on anything that is not well-formed.
Element parse_document(const std::string& text);

/// Writes the canonical form: UTF-8, an XML declaration, 2-space
/// indentation, attributes sorted by name, self-closing empty elements,
/// one tag per line. Output is byte-deterministic for equal inputs.
std::string write_document(const Element& root);

/// Attribute-value escaping used by the canonical writer. Newlines, tabs
/// and carriage returns become numeric character references so values
/// survive attribute-whitespace normalization.
std::string escape_attribute(const std::string& value);

} // namespace semlink::xml

#endif
