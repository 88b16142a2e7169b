#pragma once

#include <stdexcept>
#include <string>

namespace uniteq {

// Raised when a cross-checked mathematical claim fails at runtime.  A
// falsification is distinct from a usage error: the inputs were valid, but a
// property the library is supposed to be able to rely on did not hold.
class falsification_error : public std::runtime_error {
public:
    explicit falsification_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

} // namespace uniteq
