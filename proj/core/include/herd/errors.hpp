#pragma once

#include <stdexcept>
#include <string>

namespace herd {

// Base class for all library-specific failures.
class HerdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A queried point lies outside the arena polygon.
class OutOfArenaError : public HerdError {
 public:
  using HerdError::HerdError;
};

// Rejection sampling could not place all robots within the attempt cap.
class PlacementInfeasibleError : public HerdError {
 public:
  using HerdError::HerdError;
};

// A controller produced a non-finite actuation.
class ControllerFaultError : public HerdError {
 public:
  using HerdError::HerdError;
};

// Actuation with NaN wheel velocities.
class InvalidActuationError : public HerdError {
 public:
  using HerdError::HerdError;
};

// Charging the episode budget past its cap.
class BudgetExhaustedError : public HerdError {
 public:
  using HerdError::HerdError;
};

// Malformed controller, scenario, or campaign files.
class FormatError : public HerdError {
 public:
  using HerdError::HerdError;
};

// Filesystem failures while writing campaign artifacts.
class IoError : public HerdError {
 public:
  using HerdError::HerdError;
};

}  // namespace herd
