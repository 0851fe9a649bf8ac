#pragma once

#include <stdexcept>
#include <string>

namespace survsim {

/// Base for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PlacementFailure : public Error {
 public:
  using Error::Error;
};

class UnknownArea : public Error {
 public:
  using Error::Error;
};

class DeadSender : public Error {
 public:
  using Error::Error;
};

class AlreadyDead : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace survsim
