#ifndef RISKLENS_ERRORS_HPP
#define RISKLENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risklens {

// Input that fails schema or invariant checks. The CLI maps this to exit 2.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced non-finite values or an untreatable configuration.
// The CLI maps this to exit 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace risklens

#endif
