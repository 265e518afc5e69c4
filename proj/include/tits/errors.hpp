#ifndef TITS_ERRORS_HPP
#define TITS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tits {

// Malformed input: wrong JSON shape, unparsable number, unknown keyword.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition or invariant was violated by the input.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is not available for the chosen base field backend, or two
// values from different backends were combined.
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer arithmetic left the int64 range.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace tits

#endif  // TITS_ERRORS_HPP
