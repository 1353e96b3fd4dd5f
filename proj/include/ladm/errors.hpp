#pragma once

#include <stdexcept>
#include <string>

namespace ladm {

// Root of every error raised by the library. The CLI maps the subclasses
// onto exit codes, so keep the hierarchy flat.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the mathematical domain (e.g. beta not in (0,1)).
class domain_error : public error {
 public:
  using error::error;
};

/// A call violated a documented precondition (index out of range, empty input).
class precondition_error : public error {
 public:
  using error::error;
};

/// The nonlinearity cannot supply a derivative of the requested order.
class capability_error : public error {
 public:
  using error::error;
};

/// No printed coefficients exist for the requested (method, beta) pair.
class not_tabulated_error : public error {
 public:
  using error::error;
};

/// Query outside the span covered by a trajectory.
class range_error : public error {
 public:
  using error::error;
};

// Oracle failures.
class integration_error : public error {
 public:
  using error::error;
};

class budget_error : public integration_error {
 public:
  using integration_error::integration_error;
};

class horizon_error : public integration_error {
 public:
  using integration_error::integration_error;
};

}  // namespace ladm
