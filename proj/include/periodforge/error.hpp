#pragma once

#include <stdexcept>
#include <string>

namespace pf {

// Every module error carries a stable name so the CLI and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace pf
