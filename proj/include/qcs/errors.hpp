#pragma once

#include <stdexcept>

namespace qcs {

/// Malformed text, JSON, or database input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VersionMismatchError : public FormatError {
public:
    using FormatError::FormatError;
};

class TruncatedFileError : public FormatError {
public:
    using FormatError::FormatError;
};

class ChecksumError : public FormatError {
public:
    using FormatError::FormatError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured memory or size budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qcs
