#pragma once

#include <stdexcept>
#include <string>

namespace zetalaw {

// Argument outside an operation's domain (negative radius, t <= 0, unsupported n, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation at a genuine pole of a meromorphic function.
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Adaptive quadrature could not meet the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Continuous tracking of arg(xi) along a contour jumped by more than pi/2.
class branch_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root bracketing or iteration failed; for a positive continuous density this indicates a bug.
class root_finding_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zetalaw
