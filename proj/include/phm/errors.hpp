#pragma once

#include <stdexcept>
#include <string>

namespace phm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PHM_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(what) {}     \
    }

PHM_DEFINE_ERROR(InvalidSimplex);
PHM_DEFINE_ERROR(MissingFace);
PHM_DEFINE_ERROR(DuplicateSimplex);
PHM_DEFINE_ERROR(LengthMismatch);
PHM_DEFINE_ERROR(NotMonotone);
PHM_DEFINE_ERROR(DimZero);
PHM_DEFINE_ERROR(EmptyChain);
PHM_DEFINE_ERROR(Collinear);
PHM_DEFINE_ERROR(DuplicatePoints);
PHM_DEFINE_ERROR(DegenerateLabels);
PHM_DEFINE_ERROR(DimensionMismatch);
PHM_DEFINE_ERROR(IoError);
PHM_DEFINE_ERROR(ParseError);
PHM_DEFINE_ERROR(InvalidArgument);

#undef PHM_DEFINE_ERROR

}  // namespace phm
