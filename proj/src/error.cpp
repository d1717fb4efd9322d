#include "wrangle/error.hpp"

#include <sstream>

namespace wrangle {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedCsv: return "MalformedCsv";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Io: return "Io";
    case ErrorKind::UnknownOp: return "UnknownOp";
    case ErrorKind::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::BadVersion: return "BadVersion";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::PortMismatch: return "PortMismatch";
    case ErrorKind::MissingInput: return "MissingInput";
    case ErrorKind::NodeFailure: return "NodeFailure";
    case ErrorKind::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

bool is_workflow_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownOp:
    case ErrorKind::DuplicateNodeId:
    case ErrorKind::DanglingReference:
    case ErrorKind::CycleDetected:
    case ErrorKind::BadVersion:
    case ErrorKind::InvalidParams:
    case ErrorKind::PortMismatch:
    case ErrorKind::MissingInput:
    case ErrorKind::NodeFailure:
    case ErrorKind::UnknownKey:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

namespace {

std::string describe_parse_error(const std::string& text, std::size_t position,
                                 const std::vector<std::string>& expected,
                                 const std::string& detail) {
  std::ostringstream out;
  out << "parse error at position " << position;
  if (!detail.empty()) out << ": " << detail;
  if (!expected.empty()) {
    out << "; expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out << ", ";
      out << expected[i];
    }
    out << "}";
  }
  out << " in \"" << text << "\"";
  return out.str();
}

}  // namespace

ParseError::ParseError(std::string text, std::size_t position, std::vector<std::string> expected,
                       std::string detail)
    : Error(ErrorKind::ParseError, describe_parse_error(text, position, expected, detail)),
      text_(std::move(text)),
      position_(position),
      expected_(std::move(expected)) {}

NodeError::NodeError(std::string node_id, ErrorKind cause, const std::string& message)
    : Error(ErrorKind::NodeFailure, "node '" + node_id + "' failed (" +
                                        std::string(to_string(cause)) + "): " + message),
      node_id_(std::move(node_id)),
      cause_(cause) {}

}  // namespace wrangle
