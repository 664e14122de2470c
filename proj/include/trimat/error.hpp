// Copyright 2026 The TriMat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace trimat {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or unusable configuration (CLI flags, config files). Exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data/schema problems (unmapped columns, bad rows, empty inputs). Exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

// Carries the 1-based physical line number of the offending row.
class ParseError : public DataError {
 public:
  ParseError(const std::string& msg, long row)
      : DataError(msg + " (row " + std::to_string(row) + ")"), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

class EmptyDatasetError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidRatingError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateSplitError : public DataError {
 public:
  using DataError::DataError;
};

// A context code at prediction time exceeded its training-split maximum.
class ContextOutOfRangeError : public DataError {
 public:
  using DataError::DataError;
};

// Per-interaction prediction on an unseen pair needs an explicit context.
class MissingContextError : public Error {
 public:
  using Error::Error;
};

// Non-finite parameters during training; names the epoch that blew up.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, int epoch)
      : Error(msg + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

// Fewer than two positive frequencies: no log-log slope exists.
class UndefinedSlopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace trimat
