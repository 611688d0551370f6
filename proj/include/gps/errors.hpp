#pragma once

#include <stdexcept>
#include <string>

namespace gps {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GPS_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

GPS_DEFINE_ERROR(CyclicInput);
GPS_DEFINE_ERROR(LengthMismatch);
GPS_DEFINE_ERROR(NotAnEdge);
GPS_DEFINE_ERROR(BudgetExceeded);
GPS_DEFINE_ERROR(Unsatisfiable);
GPS_DEFINE_ERROR(InvalidParams);
GPS_DEFINE_ERROR(InconsistentExtension);
GPS_DEFINE_ERROR(EmptyInput);
GPS_DEFINE_ERROR(CycleInKnownEdges);
GPS_DEFINE_ERROR(TooLarge);
GPS_DEFINE_ERROR(NoFeasibleThreshold);
GPS_DEFINE_ERROR(ModelMismatch);
GPS_DEFINE_ERROR(InsufficientData);
GPS_DEFINE_ERROR(MalformedInput);

#undef GPS_DEFINE_ERROR

}  // namespace gps
