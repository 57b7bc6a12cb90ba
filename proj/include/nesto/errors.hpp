#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nesto {

// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class EmptySetMember : public Error {
public:
    using Error::Error;
};

// A family contains intersecting members I, J whose union is missing.
class UnionAxiomViolation : public Error {
public:
    UnionAxiomViolation(const std::string& what, std::uint64_t lhs, std::uint64_t rhs)
        : Error(what), lhs_mask(lhs), rhs_mask(rhs) {}
    std::uint64_t lhs_mask = 0;
    std::uint64_t rhs_mask = 0;
};

class NotFlag : public Error {
public:
    using Error::Error;
};

class NotConnected : public Error {
public:
    using Error::Error;
};

class MalformedTree : public Error {
public:
    using Error::Error;
};

class FullContraction : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class DegreeTooHigh : public Error {
public:
    using Error::Error;
};

// An h-vector that violates the Dehn-Somerville palindrome condition.
class NotSymmetric : public Error {
public:
    using Error::Error;
};

class MalformedVector : public Error {
public:
    using Error::Error;
};

class SizeLimit : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Signed 64-bit coefficient arithmetic would wrap.
class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace nesto
