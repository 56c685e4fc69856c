#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Base class for every failure raised by the library. Derived types name the
// contract that was violated so callers (and the CLI) can map them to exit
// codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TODA_DEFINE_ERROR(Name)         \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// exact_algebra
TODA_DEFINE_ERROR(NonDivisible);
TODA_DEFINE_ERROR(ParseError);
TODA_DEFINE_ERROR(NotOreFactor);

// root_data
TODA_DEFINE_ERROR(UnsupportedType);
TODA_DEFINE_ERROR(DimensionMismatch);

// nil_daha
TODA_DEFINE_ERROR(NotSimpleAffineRoot);
TODA_DEFINE_ERROR(DatumMismatch);
TODA_DEFINE_ERROR(DenominatorNotCleared);
TODA_DEFINE_ERROR(DenominatorVanishes);
TODA_DEFINE_ERROR(RelationFailed);

// torus_diffops
TODA_DEFINE_ERROR(LevelMismatch);
TODA_DEFINE_ERROR(NotFiniteIndex);

// toda_modules
TODA_DEFINE_ERROR(IntegralParameter);
TODA_DEFINE_ERROR(ZeroScalar);
TODA_DEFINE_ERROR(NotDominant);
TODA_DEFINE_ERROR(NotWeylInvariant);

// filtration_kit
TODA_DEFINE_ERROR(WindowTooSmall);
TODA_DEFINE_ERROR(NotKazhdanRegraded);
TODA_DEFINE_ERROR(NotExact);

// kostant_slice
TODA_DEFINE_ERROR(BadCoefficients);
TODA_DEFINE_ERROR(NotInvertible);
TODA_DEFINE_ERROR(ComponentMissesBigCell);
TODA_DEFINE_ERROR(UnsupportedGroup);

#undef TODA_DEFINE_ERROR

}  // namespace toda
