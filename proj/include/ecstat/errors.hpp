#pragma once

#include <stdexcept>
#include <string>

namespace ecstat {

struct SingularCurveError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotReducedError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BadPrimeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BadTypeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BadCombinationError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DuplicatePrimeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FactorizationIncompleteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoxTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct XTooSmallError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnknownLemmaError : std::domain_error {
  using std::domain_error::domain_error;
};

struct MissingParameterError : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyDenominatorError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CorruptCheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ecstat
