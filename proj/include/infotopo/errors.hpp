#pragma once

#include <stdexcept>
#include <string>

namespace infotopo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define INFOTOPO_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

INFOTOPO_DEFINE_ERROR(DimensionMismatch);
INFOTOPO_DEFINE_ERROR(DomainError);
INFOTOPO_DEFINE_ERROR(QuadratureFailure);
INFOTOPO_DEFINE_ERROR(SamplingFailure);
INFOTOPO_DEFINE_ERROR(NonSymmetric);
INFOTOPO_DEFINE_ERROR(IndexOutOfRange);
INFOTOPO_DEFINE_ERROR(InvalidFiltration);
INFOTOPO_DEFINE_ERROR(ScaleMismatch);
INFOTOPO_DEFINE_ERROR(NearSingularity);
INFOTOPO_DEFINE_ERROR(WitnessSearchExceeded);
INFOTOPO_DEFINE_ERROR(ParseError);
INFOTOPO_DEFINE_ERROR(ZeroMassRow);

#undef INFOTOPO_DEFINE_ERROR

} // namespace infotopo
