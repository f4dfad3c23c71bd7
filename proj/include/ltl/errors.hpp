#pragma once

#include <stdexcept>
#include <string>

namespace ltl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Mesh structure defects discovered during adjacency construction.
class MeshError : public Error {
public:
  using Error::Error;
};

class NonManifoldError : public MeshError {
public:
  NonManifoldError(const std::string& msg, int a, int b)
      : MeshError(msg), edge_a(a), edge_b(b) {}
  int edge_a, edge_b;
};

// Generator precondition failures (self-intersecting torus, bad grid sizes).
class GeometryError : public Error {
public:
  using Error::Error;
};

class SizeError : public Error {
public:
  using Error::Error;
};

// File parsing, with 1-based line number when known.
class FileParseError : public Error {
public:
  FileParseError(const std::string& msg, long line_no = -1)
      : Error(msg), line(line_no) {}
  long line;
};

class UnsupportedElementError : public FileParseError {
public:
  using FileParseError::FileParseError;
};

// Discrete operator failures carry the offending vertex id.
class OperatorError : public Error {
public:
  OperatorError(const std::string& msg, int v = -1) : Error(msg), vertex(v) {}
  int vertex;
};

class SingularStarError : public OperatorError {
public:
  using OperatorError::OperatorError;
};

class AmbiguousNormalError : public OperatorError {
public:
  using OperatorError::OperatorError;
};

class DegenerateFaceError : public OperatorError {
public:
  using OperatorError::OperatorError;
};

class TransportError : public OperatorError {
public:
  using OperatorError::OperatorError;
};

class BoundaryVertexError : public OperatorError {
public:
  using OperatorError::OperatorError;
};

// Parametric surface evaluated where EG - F^2 degenerates.
class RegularityError : public Error {
public:
  using Error::Error;
};

// Time integration produced a non-finite field.
class BlowUpError : public Error {
public:
  BlowUpError(const std::string& msg, int at_step, double max_lap)
      : Error(msg), step(at_step), max_laplacian(max_lap) {}
  int step;
  double max_laplacian;
};

}  // namespace ltl
