#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace framekit {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad dimensions, unknown names, unparsable files.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what,
                             std::optional<std::size_t> index = std::nullopt)
        : Error(what), index_(index) {}

    /// Index of the offending element, when the error is tied to one.
    std::optional<std::size_t> index() const { return index_; }

private:
    std::optional<std::size_t> index_;
};

/// A stated precondition of an operation does not hold for this input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The operation needs a frame (spanning sequence); carries the deficit.
class FrameRequiredError : public PreconditionError {
public:
    FrameRequiredError(const std::string& what, std::size_t deficit)
        : PreconditionError(what), deficit_(deficit) {}

    std::size_t deficit() const { return deficit_; }

private:
    std::size_t deficit_;
};

/// Parseval completion requires an optimal upper bound at most 1.
class BoundExceedsOneError : public PreconditionError {
public:
    BoundExceedsOneError(const std::string& what, double bound)
        : PreconditionError(what), bound_(bound) {}

    double bound() const { return bound_; }

private:
    double bound_;
};

/// A slot count below the minimal number of vectors that must be added.
class BelowMinimalCountError : public PreconditionError {
public:
    BelowMinimalCountError(const std::string& what, std::size_t minimal)
        : PreconditionError(what), minimal_(minimal) {}

    std::size_t minimal() const { return minimal_; }

private:
    std::size_t minimal_;
};

/// All-zero (or empty) input: the construction has no scale to work with.
class DegenerateScaleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Matrix fails the positive-semidefiniteness requirement.
class NotPositiveSemidefiniteError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

} // namespace framekit
