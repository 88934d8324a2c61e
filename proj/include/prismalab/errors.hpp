#pragma once

#include <stdexcept>
#include <string>

namespace prismalab {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }
  // input/precision errors map to exit code 2 in the CLI, everything else is a math failure
  virtual bool input_error() const { return true; }

 private:
  std::string kind_;
};

#define PRISMALAB_ERROR(Name)                                    \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& w) : Error(#Name, w) {}     \
  };

PRISMALAB_ERROR(NotAUnit)
PRISMALAB_ERROR(NonSeparable)
PRISMALAB_ERROR(InvalidRing)
PRISMALAB_ERROR(NotEisenstein)
PRISMALAB_ERROR(PrecisionLoss)
PRISMALAB_ERROR(NotDivisible)
PRISMALAB_ERROR(InsufficientPrecision)
PRISMALAB_ERROR(NotInFiltration)
PRISMALAB_ERROR(Inconsistent)
PRISMALAB_ERROR(PrecisionTooLow)
PRISMALAB_ERROR(IllFormedPhi)
PRISMALAB_ERROR(BoundTooSmall)
PRISMALAB_ERROR(HasUTorsion)
PRISMALAB_ERROR(NotFL)
PRISMALAB_ERROR(NotKilledByP)
PRISMALAB_ERROR(BadRamification)
PRISMALAB_ERROR(BoundaryContamination)
PRISMALAB_ERROR(Unstable)
PRISMALAB_ERROR(ParseError)
PRISMALAB_ERROR(UnknownCheck)
PRISMALAB_ERROR(DimensionMismatch)

#undef PRISMALAB_ERROR

}  // namespace prismalab
