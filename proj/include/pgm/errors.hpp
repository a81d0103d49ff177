#pragma once

#include <stdexcept>
#include <string>

namespace pgm {

// Caller misused an operation: wrong arguments, partial assignment where a
// full one is required, unknown variable or outcome, and so on.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// The network itself is unusable for the requested operation (cycle, missing
// CPT row). Validation reports these as data; operations that need a sound
// network throw.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning on an event of probability zero. Distinct from UsageError:
// the query was well-formed, the evidence just cannot occur.
class InconsistentEvidenceError : public std::runtime_error {
 public:
  explicit InconsistentEvidenceError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pgm
