// Error taxonomy for the cghz library. Every failure surfaced to callers is a
// subclass of cghz::error so the CLI can map library faults to exit codes
// without string matching.

#pragma once

#include <stdexcept>
#include <string>

namespace cghz {

/// Base class of all library exceptions.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Register size request outside [1, max_qubits].
class capacity_error : public error {
  public:
    using error::error;
};

/// Qubit index out of range, or control == target.
class index_error : public error {
  public:
    using error::error;
};

/// Post-selection on an outcome whose probability is below the prune threshold.
class postselect_error : public error {
  public:
    using error::error;
};

/// Attempt to discard a qubit that is still entangled with the rest.
class discard_error : public error {
  public:
    discard_error(const std::string& msg, double residual)
        : error(msg), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// Input state lies outside the subspace an analyzer requires.
class subspace_error : public error {
  public:
    subspace_error(const std::string& msg, double residual)
        : error(msg), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// Malformed or out-of-range state label.
class label_error : public error {
  public:
    using error::error;
};

/// Coefficients that should be unit-norm are not.
class normalization_error : public error {
  public:
    using error::error;
};

/// Operands of mismatched dimension.
class dimension_error : public error {
  public:
    using error::error;
};

/// Invalid block layout (N or m out of range).
class layout_error : public error {
  public:
    using error::error;
};

/// Invalid run parameter (e.g. zero trials, probability outside [0,1]).
class argument_error : public error {
  public:
    using error::error;
};

/// Filesystem failure while writing a report or circuit file.
class io_error : public error {
  public:
    using error::error;
};

}  // namespace cghz
