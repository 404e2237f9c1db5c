#pragma once
// Error taxonomy shared by all modules. Every failure carries a kind so the
// CLI can map it to an exit code and reports can name the failing step.

#include <stdexcept>
#include <string>

namespace rigidfold {

enum class ErrorKind {
  ClosedCurve,
  NotAdmissible,
  DegenerateTurn,
  TubeSelfIntersect,
  OutOfRange,
  NoSolution,
  DegenerateAngle,
  CreaseIntersection,
  NotRigidFoldable,
  NoHalt,
  SchemaError,
  NotQuadGrid,
  InvariantViolation,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const { return kind_; }
  // Index of the failing element (vertex, column, crease pair ...) or -1.
  int index() const { return index_; }

 private:
  ErrorKind kind_;
  int index_;
};

}  // namespace rigidfold
