#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

enum class ErrorKind {
    structural,       // operands from different groups, dimension mismatch
    domain,           // argument outside the operation's domain
    resource,         // enumeration or work cap exceeded
    parameter,        // tuning parameter or hypothesis out of range
    validation,       // malformed stochastic data
    compatibility,    // transition matrix support differs from the incidence matrix
    not_a_subgroup,
    non_surjective,
    not_irreducible,
    precondition,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace cesaro
