#ifndef DYADIC_ERROR_HPP
#define DYADIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dyadic {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (space descriptions, rationals, words, files).
class input_error : public error {
 public:
  using error::error;
};

/// Two symbolic sets over different ambient spaces were combined.
class ambient_mismatch : public error {
 public:
  ambient_mismatch() : error("symbolic sets live in different ambient spaces") {}
};

/// An operation's precondition on its set arguments does not hold.
class precondition_error : public error {
 public:
  using error::error;
};

/// A construction step produced output that fails its postcondition.
class validation_error : public error {
 public:
  validation_error(std::string condition, std::string detail)
      : error("condition " + condition + " violated: " + detail),
        condition_(std::move(condition)),
        detail_(std::move(detail)) {}

  const std::string& condition() const { return condition_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string condition_;
  std::string detail_;
};

}  // namespace dyadic

#endif  // DYADIC_ERROR_HPP
