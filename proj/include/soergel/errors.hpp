#ifndef SOERGEL_ERRORS_HPP
#define SOERGEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soergel {

// A computed quantity violated one of the structural invariants the engine
// certifies at construction time (rank mismatch, failed factorization,
// calibration mismatch, ...). Always a hard failure.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: unknown preset, bad prime for the chosen preset, malformed
// config. Maps to CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable safety cap was exceeded (group size, peel search budget).
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invariant_error(msg);
}

} // namespace soergel

#endif
