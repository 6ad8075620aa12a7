#ifndef MEREO_ERRORS_HPP
#define MEREO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mereo {

// Raised when a model violates a structural requirement: names out of
// universe, blocks that fail to cover, partial-operation tables referring
// to undeclared elements, bounds exceeded, and the like.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the readers (JSON model files, CSV decision tables, CLI
// argument handling) when the input text itself is malformed.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mereo

#endif
