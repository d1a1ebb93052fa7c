#pragma once

#include <stdexcept>
#include <string>

namespace coins {

// Base class for every domain error the library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define COINS_ERROR_TYPE(Name)                           \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what)               \
        : Error(std::string(#Name) + ": " + what) {}     \
  }

// geometry
COINS_ERROR_TYPE(EmptyIntersection);
COINS_ERROR_TYPE(NonPositiveDepth);
COINS_ERROR_TYPE(DimensionMismatch);
COINS_ERROR_TYPE(DegenerateInput);
COINS_ERROR_TYPE(InsufficientPoints);
COINS_ERROR_TYPE(ParallelAxes);

// gridmap
COINS_ERROR_TYPE(EmptyGrid);
COINS_ERROR_TYPE(OutOfBounds);
COINS_ERROR_TYPE(LengthMismatch);

// reasoner
COINS_ERROR_TYPE(NoCorrespondence);
COINS_ERROR_TYPE(UnknownCategory);
COINS_ERROR_TYPE(NoClearPoint);
COINS_ERROR_TYPE(EmptySurface);

// episodes / file formats
COINS_ERROR_TYPE(ParseError);
COINS_ERROR_TYPE(SchemaVersionError);
COINS_ERROR_TYPE(EmptyInput);
COINS_ERROR_TYPE(GenerationExhausted);

// vqa
COINS_ERROR_TYPE(SampleSkipped);

// rewards
COINS_ERROR_TYPE(NonFiniteInput);
COINS_ERROR_TYPE(MissingField);

// cli / config
COINS_ERROR_TYPE(ConfigError);
COINS_ERROR_TYPE(IOError);

#undef COINS_ERROR_TYPE

}  // namespace coins
