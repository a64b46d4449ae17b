#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pat1d {

enum class ErrorKind {
    Domain,            // argument outside the operation's domain
    Resolution,        // grid too coarse for the requested mode count
    InsufficientData,  // trace horizon does not cover what the method consumes
    Conditioning,      // division by a (near-)vanishing denominator
    Configuration,     // invalid experiment / scheme parameters
    Parse,             // malformed input file
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pat1d
