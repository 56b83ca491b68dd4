#pragma once

#include <stdexcept>
#include <string>

namespace rdsize {

// Input data violates the observation model (bad CSV, broken recruitment
// forest, degree too small, ...). Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to produce a usable answer. Maps to exit code 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration (priors, sampler or simulator settings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A candidate subgraph gives some recruitment event zero rate.
class ImpossibleRecruitment : public std::domain_error {
 public:
  explicit ImpossibleRecruitment(int event)
      : std::domain_error("recruitment event " + std::to_string(event) +
                          " has no susceptible edge"),
        event_(event) {}
  int event() const noexcept { return event_; }

 private:
  int event_;
};

}  // namespace rdsize
