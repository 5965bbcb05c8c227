#pragma once

#include <stdexcept>
#include <string>

namespace bwl {

/// Bad parameters: violated invariant, wrong dimension, malformed file.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Neither half of the decomposable/indecomposable dichotomy can be certified
/// at the configured tolerance (near-symmetric alpha).
class NoCertificate : public std::runtime_error {
 public:
  NoCertificate(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// A certificate failed its own re-check. Always a bug.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bwl
