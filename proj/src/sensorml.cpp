#include "pidinst/sensorml.hpp"

#include <vector>

#include "pidinst/errors.hpp"
#include "pidinst/strings.hpp"
#include "pidinst/xml.hpp"

namespace pidinst::sensorml {

namespace {

struct pid_term {
  const xml::element* term = nullptr;
  const xml::element* value = nullptr;
  std::string value_text;
};

// First Term element labelled as the instrument PID carrier.
std::optional<pid_term> find_pid_term(const xml::element& root) {
  for (const auto* term : xml::find_by_local_name(root, "Term")) {
    const auto* label = term->first_child("label");
    if (label == nullptr || label->trimmed_text() != pid_term_label) {
      continue;
    }
    pid_term found;
    found.term = term;
    found.value = term->first_child("value");
    if (found.value != nullptr) {
      found.value_text = found.value->trimmed_text();
    }
    return found;
  }
  return std::nullopt;
}

// Leading whitespace of the line the offset sits on, empty when the tag
// does not start its own line.
std::string line_indent(std::string_view text, size_t offset) {
  size_t line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
  for (size_t i = line_start; i < offset; ++i) {
    if (text[i] != ' ' && text[i] != '\t') {
      return {};
    }
  }
  return std::string(text.substr(line_start, offset - line_start));
}

std::string qualified(std::string_view prefix, std::string_view local) {
  return prefix.empty() ? std::string(local) : std::string(prefix) + ":" + std::string(local);
}

std::string build_block(std::string_view prefix, std::string_view url, const std::string& indent) {
  const std::string identifier = qualified(prefix, "identifier");
  const std::string term = qualified(prefix, "Term");
  const std::string label = qualified(prefix, "label");
  const std::string value = qualified(prefix, "value");
  std::string block;
  block += indent + "<" + identifier + ">\n";
  block += indent + "  <" + term + ">\n";
  block += indent + "    <" + label + ">" + std::string(pid_term_label) + "</" + label + ">\n";
  block += indent + "    <" + value + ">" + xml::escape_text(url) + "</" + value + ">\n";
  block += indent + "  </" + term + ">\n";
  block += indent + "</" + identifier + ">\n";
  return block;
}

}  // namespace

std::string embed_identifier(std::string_view document, const pid& instrument_pid,
                             conflict_policy policy, std::string_view resolver_base) {
  xml::document doc = xml::parse(document);

  auto url_opt = instrument_pid.display_url(resolver_base);
  const std::string url = url_opt ? *url_opt : instrument_pid.value();

  if (auto existing = find_pid_term(doc.root)) {
    if (existing->value != nullptr && existing->value_text == url) {
      return std::string(document);
    }
    if (policy == conflict_policy::fail) {
      throw conflicting_identifier_error(existing->value_text, url);
    }
    // Replace just the text of the value element.
    const xml::element* value = existing->value;
    if (value == nullptr) {
      throw malformed_document_error("identifier term has no value element");
    }
    std::string out(document);
    if (value->self_closing) {
      std::string open(document.substr(value->open_begin, value->open_end - value->open_begin));
      open.replace(open.size() - 2, 2, ">");
      out.replace(value->open_begin, value->close_end - value->open_begin,
                  open + xml::escape_text(url) + "</" + value->qname + ">");
    } else {
      out.replace(value->open_end, value->close_begin - value->open_end, xml::escape_text(url));
    }
    return out;
  }

  auto lists = xml::find_by_local_name(doc.root, "IdentifierList");
  if (lists.empty()) {
    throw malformed_document_error("document has no IdentifierList element to embed into");
  }
  const xml::element* list = lists.front();
  const std::string list_indent = line_indent(document, list->open_begin);
  const std::string block = build_block(list->prefix(), url, list_indent + "  ");

  std::string out(document);
  if (list->self_closing) {
    std::string open(document.substr(list->open_begin, list->open_end - list->open_begin));
    open.replace(open.size() - 2, 2, ">");
    out.replace(list->open_begin, list->open_end - list->open_begin,
                open + "\n" + block + list_indent + "</" + list->qname + ">");
    return out;
  }

  // Insert before the end tag, keeping it at its own indentation when it
  // already starts a line.
  const std::string close_indent = line_indent(document, list->close_begin);
  if (!close_indent.empty() || document[list->close_begin - 1] == '\n') {
    size_t insert_at = list->close_begin - close_indent.size();
    out.insert(insert_at, block);
  } else {
    out.insert(list->close_begin, "\n" + block + list_indent);
  }
  return out;
}

std::optional<pid> extract_identifier(std::string_view document) {
  xml::document doc = xml::parse(document);
  auto existing = find_pid_term(doc.root);
  if (!existing || existing->value == nullptr) {
    return std::nullopt;
  }
  if (existing->value_text.empty()) {
    return std::nullopt;
  }
  return pid::infer(existing->value_text);
}

}  // namespace pidinst::sensorml
