#pragma once

#include <stdexcept>
#include <string>

namespace dpc {

// Machine-checkable reason attached to every validation failure.
enum class Fault {
    NegativeWeight,
    Disconnected,
    HasCycle,
    NegativeResultWeight,
    NotAPath,
    NoSuchEdge,
    NotAdjacentSupernodes,
    NotContiguous,
    NotAMatching,
    WrongState,
    NotATreeEdge,
    EmptyTargets,
    ModeMismatch,
    BadRequest,
};

const char* fault_name(Fault f);

// Malformed input text (graph files, plan files, weight literals).
// `line` is 1-based; 0 means the problem is not tied to a single line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what_arg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what_arg
                                      : what_arg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structurally invalid graph, request, marking or redistribution.
class ValidationError : public std::runtime_error {
public:
    ValidationError(Fault fault, const std::string& what_arg)
        : std::runtime_error(std::string(fault_name(fault)) + ": " + what_arg),
          fault_(fault) {}
    Fault fault() const { return fault_; }

private:
    Fault fault_;
};

// An oracle request exceeding its hard budget (enumeration width, grid cells).
class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& what_arg)
        : std::runtime_error("TooLarge: " + what_arg) {}
};

}  // namespace dpc
