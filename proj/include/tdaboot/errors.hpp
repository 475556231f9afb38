#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdaboot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

/// A CSV row could not be parsed. `row()` is the 0-based data row index
/// (header excluded).
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class MalformedComplex : public Error {
public:
    using Error::Error;
};

class NotNested : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class DegenerateData : public Error {
public:
    using Error::Error;
};

class DegeneratePilot : public Error {
public:
    using Error::Error;
};

class InsufficientReplicates : public Error {
public:
    using Error::Error;
};

class ReplicateError : public Error {
public:
    ReplicateError(std::size_t replicate, const std::string& what)
        : Error("replicate " + std::to_string(replicate) + ": " + what), replicate_(replicate) {}
    std::size_t replicate() const noexcept { return replicate_; }

private:
    std::size_t replicate_;
};

} // namespace tdaboot
