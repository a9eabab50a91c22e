#pragma once

#include <stdexcept>
#include <string>

namespace quadgap {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Graph does not describe a valid quad-graph or planar face list.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A face whose edge labels do not form a combinatorial parallelogram.
class IncoherentFaceError : public Error {
public:
    IncoherentFaceError(int face, const std::string& what)
        : Error("incoherent face " + std::to_string(face) + ": " + what), face_(face) {}
    int face() const noexcept { return face_; }

private:
    int face_;
};

/// Spectral data that would make a weight zero or infinite.
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

class DegenerateFaceError : public DegenerateDataError {
public:
    DegenerateFaceError(int face, int x, int y)
        : DegenerateDataError("degenerate face " + std::to_string(face) + " (axes " +
                              std::to_string(x) + "," + std::to_string(y) + ")"),
          face_(face), x_(x), y_(y) {}
    int face() const noexcept { return face_; }
    int axis_x() const noexcept { return x_; }
    int axis_y() const noexcept { return y_; }

private:
    int face_, x_, y_;
};

/// Evaluation exactly at a pole; order is the pole order (> 0).
class PoleError : public Error {
public:
    explicit PoleError(int order)
        : Error("evaluation at a pole of order " + std::to_string(order)), order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

/// Residue requested at a pole of order >= 2.
class PoleOrderError : public Error {
public:
    explicit PoleOrderError(int order)
        : Error("pole of order " + std::to_string(order) + " has no simple residue formula"),
          order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Vertex field lacks a value that an operator needs.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotMOrderedError : public Error {
public:
    using Error::Error;
};

class AdjacencyError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Harmonic-to-holomorphic integration found a closing face that does not agree.
class IntegrationError : public Error {
public:
    IntegrationError(int face, double mismatch)
        : Error("CR integration inconsistent at face " + std::to_string(face) +
                " (mismatch " + std::to_string(mismatch) + ")"),
          face_(face), mismatch_(mismatch) {}
    int face() const noexcept { return face_; }
    double mismatch() const noexcept { return mismatch_; }

private:
    int face_;
    double mismatch_;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace quadgap
