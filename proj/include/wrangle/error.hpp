#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wrangle {

enum class ErrorKind {
  // data errors
  MalformedCsv,
  EmptyInput,
  MalformedJson,
  MissingField,
  RangeError,
  SchemaMismatch,
  UnknownColumn,
  TypeMismatch,
  NonPositiveSpeed,
  EmptyTable,
  NegativeValue,
  ParseError,
  Io,
  // workflow errors
  UnknownOp,
  DuplicateNodeId,
  DanglingReference,
  CycleDetected,
  BadVersion,
  InvalidParams,
  PortMismatch,
  MissingInput,
  NodeFailure,
  UnknownKey,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds produced by workflow validation or execution, as
/// opposed to problems with the data itself.
bool is_workflow_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Grammar failure with the byte offset into the parsed text and the set of
/// tokens that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::string text, std::size_t position, std::vector<std::string> expected,
             std::string detail = {});

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Wraps an operator failure with the id of the workflow node that raised it.
class NodeError : public Error {
 public:
  NodeError(std::string node_id, ErrorKind cause, const std::string& message);

  const std::string& node_id() const noexcept { return node_id_; }
  ErrorKind cause() const noexcept { return cause_; }

 private:
  std::string node_id_;
  ErrorKind cause_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace wrangle
