#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace palfac {

// Base class for every error raised by the library. Callers that only care
// about "did it work" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- realnum ----
class FieldMismatch : public Error {
public:
    using Error::Error;
};
class DivisionByZero : public Error {
public:
    using Error::Error;
};
// Sign/floor queries escalate ball precision; this fires only when the
// configured bit cap is reached before the sign resolves.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};
// Invalid domain-type construction: bad FieldSpec, malformed FamilySpec,
// inconsistent window parameters. Maps to CLI exit code 2.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// ---- wordcore ----
class GuardExceeded : public Error {
public:
    using Error::Error;
};
class UnstableLevel : public Error {
public:
    using Error::Error;
};

// ---- generators ----
class NotParryWithinBudget : public Error {
public:
    using Error::Error;
};
class NonProlongable : public Error {
public:
    using Error::Error;
};
class OutOfDomain : public Error {
public:
    using Error::Error;
};
class NotAFactor : public Error {
public:
    using Error::Error;
};
class NotReversalPermutation : public Error {
public:
    using Error::Error;
};

// ---- complexity ----
class OracleTooLarge : public Error {
public:
    using Error::Error;
};

// ---- rauzy ----
class DegreeIdentityViolation : public Error {
public:
    using Error::Error;
};
class NotClosedUnderReversal : public Error {
public:
    using Error::Error;
};
class NotStronglyConnected : public Error {
public:
    using Error::Error;
};
class PeriodicLanguage : public Error {
public:
    using Error::Error;
};
class AuditViolation : public Error {
public:
    using Error::Error;
};

// ---- verify ----
class UnknownFamilyLaw : public Error {
public:
    using Error::Error;
};

} // namespace palfac
