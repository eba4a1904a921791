#pragma once

#include <stdexcept>
#include <string>

namespace logosym {

// Base for every error raised by the library. Precondition violations on
// plain arguments (k > n, empty inputs) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidImage : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input data: CSV files, corpora, model files.
class DataError : public Error {
 public:
  using Error::Error;
};

// A configuration that cannot be run on the given data, e.g. a class with
// fewer training samples than the requested cluster count.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace logosym
