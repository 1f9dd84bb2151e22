#pragma once

#include <stdexcept>
#include <string>

namespace qhe {

enum class ErrorKind {
    input,                  // malformed input file or arguments
    dimension_mismatch,
    dimension_not_stabilized,
    non_split_simple,
    non_admissible_relations,
    not_an_ideal,
    not_multiplicative,
    layer_not_semisimple,
    not_graded,
    filtration_mismatch,
    splitting_not_closed,
    boundary_truncated,
    precondition,           // e.g. pairing condition not met before form_on_C
    internal,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that the CLI can
/// map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Filtration validation failures name the offending layer index.
class FiltrationError : public Error {
public:
    FiltrationError(ErrorKind kind, int index, const std::string& what)
        : Error(kind, what + " (layer " + std::to_string(index) + ")"), index_(index) {}

    int index() const { return index_; }

private:
    int index_;
};

}  // namespace qhe
