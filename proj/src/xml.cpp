#include "pidinst/xml.hpp"

#include <cctype>

#include "pidinst/errors.hpp"
#include "pidinst/strings.hpp"

namespace pidinst::xml {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' ||
         c == '.';
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp <= 0x7F) {
    out += static_cast<char>(cp);
  } else if (cp <= 0x7FF) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp <= 0xFFFF) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class parser {
 public:
  explicit parser(std::string_view src) : src_(src) {}

  document run() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") {
      pos_ = 3;
    }
    skip_misc();
    if (at("<!DOCTYPE")) {
      fail("DOCTYPE declarations are not supported");
    }
    if (eof() || src_[pos_] != '<') {
      fail("expected a root element");
    }
    document doc;
    doc.root = parse_element();
    skip_misc();
    if (!eof()) {
      fail("content after the root element");
    }
    return doc;
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  bool at(std::string_view token) const { return src_.substr(pos_, token.size()) == token; }

  [[noreturn]] void fail(const std::string& message) const {
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw malformed_document_error("malformed document at line " + std::to_string(line) +
                                   ", column " + std::to_string(column) + ": " + message);
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  void skip_until(std::string_view terminator, const char* what) {
    auto found = src_.find(terminator, pos_);
    if (found == std::string_view::npos) {
      fail(std::string("unterminated ") + what);
    }
    pos_ = found + terminator.size();
  }

  // Whitespace, comments and processing instructions between nodes.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (at("<!--")) {
        pos_ += 4;
        skip_until("-->", "comment");
      } else if (at("<?")) {
        pos_ += 2;
        skip_until("?>", "processing instruction");
      } else {
        return;
      }
    }
  }

  std::string read_name() {
    size_t start = pos_;
    while (!eof() && is_name_char(peek())) {
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected a name");
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string decode(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out += raw[i++];
        continue;
      }
      auto end = raw.find(';', i);
      if (end == std::string_view::npos) {
        fail("unterminated entity reference");
      }
      auto entity = raw.substr(i + 1, end - i - 1);
      if (entity == "amp") {
        out += '&';
      } else if (entity == "lt") {
        out += '<';
      } else if (entity == "gt") {
        out += '>';
      } else if (entity == "quot") {
        out += '"';
      } else if (entity == "apos") {
        out += '\'';
      } else if (entity.size() >= 2 && entity[0] == '#') {
        unsigned long cp = 0;
        try {
          cp = entity[1] == 'x' || entity[1] == 'X'
                   ? std::stoul(std::string(entity.substr(2)), nullptr, 16)
                   : std::stoul(std::string(entity.substr(1)), nullptr, 10);
        } catch (const std::exception&) {
          fail("bad character reference: &" + std::string(entity) + ";");
        }
        append_utf8(out, cp);
      } else {
        fail("unknown entity: &" + std::string(entity) + ";");
      }
      i = end + 1;
    }
    return out;
  }

  attribute parse_attribute() {
    attribute attr;
    attr.name = read_name();
    skip_ws();
    if (eof() || peek() != '=') {
      fail("expected '=' after attribute name");
    }
    ++pos_;
    skip_ws();
    if (eof() || (peek() != '"' && peek() != '\'')) {
      fail("expected a quoted attribute value");
    }
    char quote = peek();
    ++pos_;
    auto end = src_.find(quote, pos_);
    if (end == std::string_view::npos) {
      fail("unterminated attribute value");
    }
    attr.value = decode(src_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return attr;
  }

  element parse_element() {
    element el;
    el.open_begin = pos_;
    ++pos_;  // '<'
    el.qname = read_name();
    for (;;) {
      skip_ws();
      if (eof()) {
        fail("unterminated start tag for <" + el.qname + ">");
      }
      if (at("/>")) {
        pos_ += 2;
        el.open_end = pos_;
        el.close_begin = el.open_begin;
        el.close_end = pos_;
        el.self_closing = true;
        return el;
      }
      if (peek() == '>') {
        ++pos_;
        el.open_end = pos_;
        break;
      }
      el.attributes.push_back(parse_attribute());
    }

    for (;;) {
      if (eof()) {
        fail("missing end tag for <" + el.qname + ">");
      }
      if (at("</")) {
        el.close_begin = pos_;
        pos_ += 2;
        auto name = read_name();
        if (name != el.qname) {
          fail("mismatched end tag: expected </" + el.qname + ">, found </" + name + ">");
        }
        skip_ws();
        if (eof() || peek() != '>') {
          fail("expected '>' in end tag");
        }
        ++pos_;
        el.close_end = pos_;
        return el;
      }
      if (at("<!--")) {
        pos_ += 4;
        skip_until("-->", "comment");
        continue;
      }
      if (at("<![CDATA[")) {
        pos_ += 9;
        auto end = src_.find("]]>", pos_);
        if (end == std::string_view::npos) {
          fail("unterminated CDATA section");
        }
        el.text.append(src_.substr(pos_, end - pos_));
        pos_ = end + 3;
        continue;
      }
      if (at("<?")) {
        pos_ += 2;
        skip_until("?>", "processing instruction");
        continue;
      }
      if (peek() == '<') {
        el.children.push_back(parse_element());
        continue;
      }
      auto next = src_.find('<', pos_);
      if (next == std::string_view::npos) {
        fail("missing end tag for <" + el.qname + ">");
      }
      el.text += decode(src_.substr(pos_, next - pos_));
      pos_ = next;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
};

void collect(const element& el, std::string_view local, std::vector<const element*>& out) {
  if (el.local_name() == local) {
    out.push_back(&el);
  }
  for (const auto& child : el.children) {
    collect(child, local, out);
  }
}

}  // namespace

std::string_view element::local_name() const {
  auto colon = qname.find(':');
  return colon == std::string::npos ? std::string_view(qname)
                                    : std::string_view(qname).substr(colon + 1);
}

std::string_view element::prefix() const {
  auto colon = qname.find(':');
  return colon == std::string::npos ? std::string_view() : std::string_view(qname).substr(0, colon);
}

std::string element::trimmed_text() const { return strings::trim(text); }

const element* element::first_child(std::string_view local) const {
  for (const auto& child : children) {
    if (child.local_name() == local) {
      return &child;
    }
  }
  return nullptr;
}

document parse(std::string_view text) { return parser(text).run(); }

std::vector<const element*> find_by_local_name(const element& root, std::string_view local) {
  std::vector<const element*> out;
  collect(root, local, out);
  return out;
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace pidinst::xml
