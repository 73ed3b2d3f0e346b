#ifndef CHARMOD_ERRORS_HPP
#define CHARMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charmod {

// Domain errors carry a stable name that is reported through the C API and
// the CLI (exit code 2). ParseError is separate (exit code 1).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

#define CHARMOD_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
    }

CHARMOD_DEFINE_ERROR(DimensionMismatch);
CHARMOD_DEFINE_ERROR(EmptyCell);
CHARMOD_DEFINE_ERROR(NonFaceIntersection);
CHARMOD_DEFINE_ERROR(NotInComplex);
CHARMOD_DEFINE_ERROR(ZeroDimensionalCell);
CHARMOD_DEFINE_ERROR(NotAVertex);
CHARMOD_DEFINE_ERROR(NotFreePair);
CHARMOD_DEFINE_ERROR(Unbounded);
CHARMOD_DEFINE_ERROR(SingularMatrix);
CHARMOD_DEFINE_ERROR(OrderMismatch);
CHARMOD_DEFINE_ERROR(Underdetermined);
CHARMOD_DEFINE_ERROR(Inconsistent);
CHARMOD_DEFINE_ERROR(NotSimple);
CHARMOD_DEFINE_ERROR(BadProjection);
CHARMOD_DEFINE_ERROR(NoVertices);
CHARMOD_DEFINE_ERROR(HullConditionViolated);
CHARMOD_DEFINE_ERROR(ConstructionFailed);
CHARMOD_DEFINE_ERROR(NotASubcomplex);
CHARMOD_DEFINE_ERROR(NonGenericSample);
CHARMOD_DEFINE_ERROR(UnboundedFiber);
CHARMOD_DEFINE_ERROR(FacetNotInComplex);

#undef CHARMOD_DEFINE_ERROR

} // namespace charmod

#endif
