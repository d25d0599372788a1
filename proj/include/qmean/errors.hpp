#pragma once

#include <stdexcept>
#include <string>

namespace qmean {

/// Malformed instance document (bad JSON, missing/ill-typed fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a configured resource cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmean
