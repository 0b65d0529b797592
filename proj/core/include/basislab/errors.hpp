#pragma once

#include <stdexcept>
#include <string>

namespace basislab {

// One exception type for the whole library; the kind decides the CLI exit
// code (config -> 2, domain/compute -> 3, budget -> 4).
enum class ErrorKind {
    Domain,      // evaluation outside a subexpression's domain
    Growth,      // growth condition violated / slope does not stabilize
    Ambiguity,   // probes cannot decide; caller must declare
    Range,       // argument outside the operation's supported range
    Capacity,    // table/bitset larger than the configured budget
    Budget,      // compute budget exceeded
    Config,      // config/expression parse error
    Internal,    // invariant broken (a bug)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace basislab
