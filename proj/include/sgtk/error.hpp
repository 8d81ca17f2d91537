#pragma once

#include <stdexcept>
#include <string>

namespace sgtk {

/// Malformed input data: bad encodings, dangling references, violated type invariants.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation was asked for outside the domain where it is defined.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgtk
