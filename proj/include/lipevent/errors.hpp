#ifndef LIPEVENT_ERRORS_HPP
#define LIPEVENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lipevent {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rotation underdetermined: landmarks collinear or coincident.
struct DegenerateConfiguration : Error {
    using Error::Error;
};

// Smoothing window even or < 1.
struct InvalidWindow : Error {
    using Error::Error;
};

// Frame pair with differing landmark counts.
struct CountMismatch : Error {
    using Error::Error;
};

// A landmark coincides with the reference sphere center.
struct LandmarkAtCenter : Error {
    using Error::Error;
};

// Left/right partition has an empty side.
struct EmptySide : Error {
    using Error::Error;
};

// Too few frames for the coarsest temporal resolution.
struct SequenceTooShort : Error {
    using Error::Error;
};

// State lists of different lengths.
struct LengthMismatch : Error {
    using Error::Error;
};

// Deviation requested for an undetected event.
struct MissingEvent : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

// Evaluation input without a matching ground-truth entry.
struct UnmatchedSequence : Error {
    using Error::Error;
};

// Malformed sequence file.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace lipevent

#endif  // LIPEVENT_ERRORS_HPP
