#pragma once

#include <stdexcept>
#include <string>

namespace spp {

// Malformed input file (bad JSON, missing fields, wrong types).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a documented invariant.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input exceeds a documented size cap (exact solver, brute-force oracle).
class size_cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant failed. Indicates a bug, not bad input.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

}  // namespace spp
