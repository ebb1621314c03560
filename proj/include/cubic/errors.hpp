#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

// Every failure carries a stable name so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    virtual bool capacity() const { return false; }

private:
    std::string name_;
};

// Errors that mean "the caches/sieves are too small", mapped to exit code 3.
class CapacityError : public Error {
public:
    using Error::Error;
    bool capacity() const override { return true; }
};

#define CUBIC_DEFINE_ERROR(Name, Base)                                        \
    class Name : public Base {                                                \
    public:                                                                   \
        explicit Name(const std::string& what) : Base(#Name, what) {}         \
    };

CUBIC_DEFINE_ERROR(Overflow, Error)
CUBIC_DEFINE_ERROR(NotPrimaryizable, Error)
CUBIC_DEFINE_ERROR(UndefinedGcd, Error)
CUBIC_DEFINE_ERROR(NotPrime, Error)
CUBIC_DEFINE_ERROR(DomainError, Error)
CUBIC_DEFINE_ERROR(ConfigError, Error)
CUBIC_DEFINE_ERROR(CacheFormatError, Error)
CUBIC_DEFINE_ERROR(ResidueSystemTooLarge, CapacityError)
CUBIC_DEFINE_ERROR(FactorizationUnavailable, CapacityError)
CUBIC_DEFINE_ERROR(SieveCapacity, CapacityError)
CUBIC_DEFINE_ERROR(DirectSumTooLarge, CapacityError)

#undef CUBIC_DEFINE_ERROR

}  // namespace cubic
