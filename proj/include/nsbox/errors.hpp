#pragma once

#include <stdexcept>
#include <string>

namespace nsbox {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class SignallingState : public Error {
public:
    using Error::Error;
};

class ZeroProbabilityOutcome : public Error {
public:
    using Error::Error;
};

class BadSignature : public Error {
public:
    using Error::Error;
};

class EmptyPolyhedron : public Error {
public:
    using Error::Error;
};

class NotUniversal : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace nsbox
