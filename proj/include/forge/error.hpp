#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Raised for malformed input data: bad file rows, violated corpus invariants,
// unknown ids. The message names the offending line number or sentence id so
// the CLI can surface it verbatim.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace forge
