#pragma once

#include <stdexcept>
#include <string>

namespace logclone {

// Base of every error raised by the library. The CLI maps the subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad threshold, empty input...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The corpus could not be read, decoded or is internally inconsistent.
class CorpusError : public Error {
 public:
  using Error::Error;
};

// An evaluation cannot be carried out on the given data (e.g. an empty split).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace logclone
