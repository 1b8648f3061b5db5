#pragma once

#include <stdexcept>
#include <string>

namespace qsvt {

// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QSVT_DECLARE_ERROR(Name, Base)          \
    class Name : public Base {                  \
    public:                                     \
        using Base::Base;                       \
    }

QSVT_DECLARE_ERROR(DomainError, Error);
QSVT_DECLARE_ERROR(UnsupportedConversion, Error);
QSVT_DECLARE_ERROR(ParityError, Error);
QSVT_DECLARE_ERROR(CertificationFailed, Error);
QSVT_DECLARE_ERROR(DegreeCapExceeded, CertificationFailed);
QSVT_DECLARE_ERROR(OverflowGuard, Error);
QSVT_DECLARE_ERROR(ConvergenceError, Error);
QSVT_DECLARE_ERROR(NoConvergence, Error);
QSVT_DECLARE_ERROR(NotHermitian, Error);
QSVT_DECLARE_ERROR(NotUnitary, Error);
QSVT_DECLARE_ERROR(NotProjector, Error);
QSVT_DECLARE_ERROR(NotUnit, Error);
QSVT_DECLARE_ERROR(ScaleTooSmall, Error);
QSVT_DECLARE_ERROR(ConditionViolated, Error);
QSVT_DECLARE_ERROR(OrderNotFound, Error);
QSVT_DECLARE_ERROR(GiveUp, Error);
QSVT_DECLARE_ERROR(EmptyCurve, Error);

#undef QSVT_DECLARE_ERROR

}  // namespace qsvt
