#ifndef STATECYCLE_ERROR_HPP
#define STATECYCLE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace statecycle {

// Every failure the library reports carries a stable kind string; the CLI
// copies it verbatim into its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define STATECYCLE_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

STATECYCLE_DEFINE_ERROR(MalformedToken);
STATECYCLE_DEFINE_ERROR(ArcCountMismatch);
STATECYCLE_DEFINE_ERROR(OrientationConflict);
STATECYCLE_DEFINE_ERROR(UnknownName);
STATECYCLE_DEFINE_ERROR(LengthMismatch);
STATECYCLE_DEFINE_ERROR(NotACycle);
STATECYCLE_DEFINE_ERROR(TooLarge);
STATECYCLE_DEFINE_ERROR(OutOfRange);
STATECYCLE_DEFINE_ERROR(SeparationViolated);
STATECYCLE_DEFINE_ERROR(InvalidRegion);

#undef STATECYCLE_DEFINE_ERROR

}  // namespace statecycle

#endif  // STATECYCLE_ERROR_HPP
