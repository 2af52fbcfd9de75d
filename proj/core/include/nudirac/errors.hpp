#pragma once

#include <stdexcept>
#include <string>

namespace nudirac {

/// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NUDIRAC_DECLARE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

// NU kernel
NUDIRAC_DECLARE_ERROR(NoRealK);
NUDIRAC_DECLARE_ERROR(InconsistentK);
NUDIRAC_DECLARE_ERROR(NoAdmissibleBranch);
NUDIRAC_DECLARE_ERROR(NoSignChange);
NUDIRAC_DECLARE_ERROR(BranchJump);

// models / wavefunctions
NUDIRAC_DECLARE_ERROR(DomainError);
NUDIRAC_DECLARE_ERROR(DivisionByZero);

// spectra
NUDIRAC_DECLARE_ERROR(DegenerateDenominator);

// special functions
NUDIRAC_DECLARE_ERROR(RecurrenceBreakdown);

// verification
NUDIRAC_DECLARE_ERROR(GridTooCoarse);

#undef NUDIRAC_DECLARE_ERROR

}  // namespace nudirac
