#pragma once

#include <stdexcept>
#include <string>

namespace qcdyn {

// Argument outside the domain where a formula is defined (e.g. derivative at
// the branch point, alpha at or below 1/2).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Eigenvalue too close to a low-order root of unity, or the homological
// system is numerically singular.
class ResonanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The linear part does not have a complex-conjugate eigenvalue pair.
class EigenvalueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a structural precondition (e.g. composing with a jet that
// has a constant term).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A leaf point landed on the critical value, where the two inverse branches
// coincide.
class BranchDegenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qcdyn
