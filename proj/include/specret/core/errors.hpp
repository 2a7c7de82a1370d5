// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace specret {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimError : public Error {
  public:
    using Error::Error;
};

class DegenerateVectorError : public Error {
  public:
    using Error::Error;
};

class BuildError : public Error {
  public:
    using Error::Error;
};

class NotReadyError : public Error {
  public:
    using Error::Error;
};

class RetrievalError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed or inconsistent input data (files, labels).
class DataError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace specret
