#pragma once

#include <stdexcept>
#include <string>

namespace spacerisk {

// Base for everything the library throws on bad input or failed runs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected before any computation happened. The CLI maps these to exit 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

#define SPACERISK_VALIDATION_ERROR(Name)            \
  class Name : public ValidationError {             \
   public:                                          \
    using ValidationError::ValidationError;         \
  }

// infrastructure model
SPACERISK_VALIDATION_ERROR(DuplicateNodeId);
SPACERISK_VALIDATION_ERROR(DuplicateArc);
SPACERISK_VALIDATION_ERROR(DanglingArc);
SPACERISK_VALIDATION_ERROR(InvalidNode);
SPACERISK_VALIDATION_ERROR(FlowNotSubgraph);
SPACERISK_VALIDATION_ERROR(InvalidMission);

// threat model
SPACERISK_VALIDATION_ERROR(PossessionOutOfRange);
SPACERISK_VALIDATION_ERROR(DuplicateTechnique);
SPACERISK_VALIDATION_ERROR(UnknownTechnique);
SPACERISK_VALIDATION_ERROR(BetaOutOfRange);

// engine configuration
SPACERISK_VALIDATION_ERROR(InvalidConfig);

// hardening
SPACERISK_VALIDATION_ERROR(MissingControl);

// kill chains
SPACERISK_VALIDATION_ERROR(IncompleteAnnotation);
SPACERISK_VALIDATION_ERROR(EmptyCandidateSet);
SPACERISK_VALIDATION_ERROR(CombinatorialCap);

// metrics
SPACERISK_VALIDATION_ERROR(MissingScore);
SPACERISK_VALIDATION_ERROR(EmptyChain);
SPACERISK_VALIDATION_ERROR(ScoreOutOfRange);

// NRS
SPACERISK_VALIDATION_ERROR(OutOfRange);
SPACERISK_VALIDATION_ERROR(MissingCatalogEntry);

// files
SPACERISK_VALIDATION_ERROR(ParseError);
SPACERISK_VALIDATION_ERROR(CrossRefError);

#undef SPACERISK_VALIDATION_ERROR

}  // namespace spacerisk
