#pragma once

#include <stdexcept>
#include <string>

namespace qna {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad caller input: malformed documents, inconsistent parameters, broken
// preconditions. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A value (or index) outside its declared range.
class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A register or problem size outside the supported ceiling.
class SizeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Internal numeric failure, e.g. statevector norm drifting beyond tolerance.
// The CLI maps these to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace qna
