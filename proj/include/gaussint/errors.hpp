#pragma once

#include <stdexcept>

namespace gaussint {

/// Precondition violation on a mathematical operation (zero input where
/// nonzero is required, composite where a prime is required, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured resource bound was exceeded (oracle norm cap, precision cap).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text that does not match the accepted Gaussian-integer syntax.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A checkpoint/results file could not be loaded: corrupt content or a
/// fingerprint that does not match the requested task. Never silently
/// degrades into a fresh start.
struct state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed, e.g. a search hit that a proven theorem
/// says cannot exist.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace gaussint
