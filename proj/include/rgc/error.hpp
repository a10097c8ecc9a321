#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rgc {

enum class ErrorKind {
    invalid_argument,
    malformed_input,
    validation_failed,
    not_a_cocycle,
    obstruction,
    limit_exceeded,
    internal,
};

// Every failure raised by the library is an rgc::Error; the kind drives the
// C API status code and the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition)
        throw Error(kind, what);
}

// A failed axiom together with a concrete witness.
struct Violation {
    std::string axiom;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    void add(std::string axiom, std::string witness) { violations.push_back({std::move(axiom), std::move(witness)}); }
    bool has(const std::string& axiom) const
    {
        for (const auto& v : violations)
            if (v.axiom == axiom)
                return true;
        return false;
    }
    std::string to_string() const
    {
        std::string out;
        for (const auto& v : violations)
            out += v.axiom + ": " + v.witness + "\n";
        return out;
    }
};

}  // namespace rgc
