#pragma once
#include <stdexcept>
#include <string>

namespace rab {

// Every failed precondition carries a stable machine-readable kind tag.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace rab
