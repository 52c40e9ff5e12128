#pragma once

#include <stdexcept>
#include <string>

namespace dfinum {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    parse,           // malformed literal or file
    precondition,    // caller violated a documented precondition
    singular_point,  // base or target is a singularity of the operator
    no_path,         // no admissible continuation path
    budget,          // term/step budget exhausted
    no_convergence,  // limit detection saw no contraction
    ambiguous_root,  // limit enclosure meets more than one root disk
    separation,      // root isolation could not separate roots
};

/// Lower-case identifier of the kind, e.g. "singular_point".
inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::singular_point: return "singular_point";
        case ErrorKind::no_path: return "no_path";
        case ErrorKind::budget: return "budget";
        case ErrorKind::no_convergence: return "no_convergence";
        case ErrorKind::ambiguous_root: return "ambiguous_root";
        case ErrorKind::separation: return "separation";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace dfinum
