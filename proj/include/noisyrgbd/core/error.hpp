#pragma once

#include <stdexcept>
#include <string>

namespace noisyrgbd {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent configuration (unknown kind, bad stage order, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Operation parameters outside their valid domain (kernel too large, delta >= stream length, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(what) {}
};

/// Timestamp association between two trajectories produced no matches.
class AssociationError : public Error {
public:
    explicit AssociationError(const std::string& what) : Error(what) {}
};

/// Degenerate geometry for trajectory alignment (too few or collinear points).
class AlignmentError : public Error {
public:
    explicit AlignmentError(const std::string& what) : Error(what) {}
};

/// File system / encoding failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace noisyrgbd
