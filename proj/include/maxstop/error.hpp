#pragma once

#include <stdexcept>
#include <string>

namespace maxstop {

// Rejected user input: malformed cutoff vectors, out-of-range parameters,
// unparseable files. The CLI maps this to exit code 1.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace maxstop
