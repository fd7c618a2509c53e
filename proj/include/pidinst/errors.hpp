#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pidinst {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- canonical-format parsing ---

class syntax_error : public error {
 public:
  syntax_error(const std::string& message, size_t line, size_t column)
      : error("syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

class unknown_property_error : public error {
 public:
  unknown_property_error(const std::string& name, const std::string& path)
      : error("unknown property \"" + name + "\" at " + path), name_(name), path_(path) {}

  const std::string& name() const { return name_; }
  const std::string& path() const { return path_; }

 private:
  std::string name_;
  std::string path_;
};

class type_mismatch_error : public error {
 public:
  type_mismatch_error(const std::string& path, const std::string& message)
      : error("type mismatch at " + path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// --- crosswalks ---

class missing_mandatory_error : public error {
 public:
  explicit missing_mandatory_error(const std::string& path)
      : error("missing mandatory property: " + path), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class missing_type_handle_error : public error {
 public:
  explicit missing_type_handle_error(const std::string& property)
      : error("no type handle registered for property: " + property) {}
};

class unknown_type_handle_error : public error {
 public:
  explicit unknown_type_handle_error(const std::string& type_handle)
      : error("unknown type handle: " + type_handle) {}
};

class malformed_entry_error : public error {
 public:
  malformed_entry_error(int index, const std::string& message)
      : error("malformed data in handle-record entry " + std::to_string(index) + ": " + message),
        index_(index) {}

  int index() const { return index_; }

 private:
  int index_;
};

// --- markup handling ---

class malformed_document_error : public error {
 public:
  using error::error;
};

class conflicting_identifier_error : public error {
 public:
  conflicting_identifier_error(const std::string& existing, const std::string& incoming)
      : error("document already carries a different persistent identifier (existing \"" +
              existing + "\", incoming \"" + incoming + "\")"),
        existing_(existing),
        incoming_(incoming) {}

  const std::string& existing() const { return existing_; }
  const std::string& incoming() const { return incoming_; }

 private:
  std::string existing_;
  std::string incoming_;
};

// --- link graph ---

class duplicate_instrument_pid_error : public error {
 public:
  explicit duplicate_instrument_pid_error(const std::string& pid_value)
      : error("two corpus records share the identifier: " + pid_value) {}
};

class node_not_found_error : public error {
 public:
  explicit node_not_found_error(const std::string& pid_value)
      : error("no such node in graph: " + pid_value) {}
};

}  // namespace pidinst
