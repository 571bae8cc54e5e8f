#pragma once

#include <stdexcept>
#include <string>

namespace airoas {

/// All particle weights are zero: the belief carries no mass and cannot be
/// normalized, resampled, or tempered further.
class ZeroTotalWeightError : public std::runtime_error {
public:
    explicit ZeroTotalWeightError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A tree operation was invoked on a node without children.
class NotExpandedError : public std::logic_error {
public:
    explicit NotExpandedError(const std::string& what)
        : std::logic_error(what) {}
};

/// A bound-initializer variant was requested that the model cannot support.
class UnsupportedBoundError : public std::runtime_error {
public:
    explicit UnsupportedBoundError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace airoas
