#pragma once

#include <stdexcept>
#include <string>

namespace qdist {

// Base class for all library errors. Every throw site uses one of the
// derived types below so callers can map failures to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix input is not square where a square matrix is required.
class NonSquare : public Error {
public:
    explicit NonSquare(const std::string& what) : Error(what) {}
};

// Matrix fails the Hermitian symmetry check.
class NotHermitian : public Error {
public:
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

// Spectrum has an eigenvalue below the negativity tolerance.
class NotPSD : public Error {
public:
    explicit NotPSD(const std::string& what) : Error(what) {}
};

// Operands have incompatible dimensions.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Value-level invariant violated (non-finite entry, norm/trace off,
// weight vector not summing to one, malformed fixture payload).
class InvalidState : public Error {
public:
    explicit InvalidState(const std::string& what) : Error(what) {}
};

// Channel-level invariant violated (Kraus completeness, unitarity).
class InvalidChannel : public Error {
public:
    explicit InvalidChannel(const std::string& what) : Error(what) {}
};

// Measure-and-reprepare form whose measurement vectors do not resolve
// the identity.
class IncompletePOVM : public Error {
public:
    explicit IncompletePOVM(const std::string& what) : Error(what) {}
};

// Verification suite name not recognised.
class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& what) : Error(what) {}
};

// An iterative kernel failed to reach its convergence criterion.
class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what) : Error(what) {}
};

} // namespace qdist
