#ifndef MCLUS_ERRORS_HPP
#define MCLUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mclus {

/// Stable error classes. The CLI maps each class to a process exit code,
/// so additions belong at the end.
enum class ErrorClass {
    config = 2,            // bad flag / option combination
    parse = 3,             // malformed input file
    schema = 4,            // file parsed but violates the declared schema
    input_mismatch = 5,    // two inputs disagree (e.g. labels vs data)
    domain = 6,            // numeric precondition violated
    undefined_index = 7,   // index has no value on this clustering
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }
    int exit_code() const noexcept { return static_cast<int>(cls_); }

private:
    ErrorClass cls_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorClass::config, what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorClass::parse, what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(ErrorClass::schema, what) {}
};

struct InputMismatch : Error {
    explicit InputMismatch(const std::string& what) : Error(ErrorClass::input_mismatch, what) {}
};

struct InsufficientSample : Error {
    explicit InsufficientSample(const std::string& what) : Error(ErrorClass::domain, what) {}
};

struct InvalidBandwidth : Error {
    explicit InvalidBandwidth(const std::string& what) : Error(ErrorClass::domain, what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(ErrorClass::domain, what) {}
};

struct NoComparableVariables : Error {
    explicit NoComparableVariables(const std::string& what) : Error(ErrorClass::domain, what) {}
};

struct InvalidK : Error {
    explicit InvalidK(const std::string& what) : Error(ErrorClass::domain, what) {}
};

struct UndefinedIndex : Error {
    explicit UndefinedIndex(const std::string& what) : Error(ErrorClass::undefined_index, what) {}
};

}  // namespace mclus

#endif  // MCLUS_ERRORS_HPP
