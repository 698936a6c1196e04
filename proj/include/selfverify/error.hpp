#pragma once

#include <stdexcept>
#include <string>

namespace selfverify {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two automata (or an automaton and a track spec) disagree on the alphabet.
class alphabet_mismatch : public error {
public:
    using error::error;
};

class invalid_representation : public error {
public:
    using error::error;
};

class unsupported_system : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

class not_synchronized : public error {
public:
    using error::error;
};

/// A learning run hit its query or hypothesis-size cap.
class budget_exceeded : public error {
public:
    using error::error;
};

}  // namespace selfverify
