#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pidinst::xml {

struct attribute {
  std::string name;
  std::string value;
};

/// Element node with source offsets into the parsed text, so edits can
/// splice into the original document instead of reserializing it.
struct element {
  std::string qname;  // prefixed name as written, e.g. "sml:Term"
  std::vector<attribute> attributes;
  std::vector<element> children;
  std::string text;  // concatenated, entity-decoded character data

  size_t open_begin = 0;  // '<' of the start tag
  size_t open_end = 0;    // one past '>' of the start tag
  size_t close_begin = 0; // '<' of the end tag; == open_begin when self-closing
  size_t close_end = 0;   // one past '>' of the end tag
  bool self_closing = false;

  std::string_view local_name() const;
  std::string_view prefix() const;  // empty when unprefixed
  std::string trimmed_text() const;
  const element* first_child(std::string_view local) const;
};

struct document {
  element root;
};

/// Parses a standalone document: prolog, comments, CDATA, the five
/// predefined entities plus numeric character references. DOCTYPE is
/// rejected. Throws malformed_document_error with line/column context.
document parse(std::string_view text);

/// Depth-first collection of elements (root included) by local name.
std::vector<const element*> find_by_local_name(const element& root, std::string_view local);

std::string escape_text(std::string_view text);

}  // namespace pidinst::xml
