#ifndef SYMWEB_ERRORS_HPP
#define SYMWEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symweb {

// Error categories carry the process exit code used by the CLI:
//   1 usage, 2 parse/format, 3 domain, 4 resource cap.
class Error : public std::runtime_error {
public:
    Error(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(1, msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(2, msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(3, msg) {}
};

class CapError : public Error {
public:
    explicit CapError(const std::string& msg) : Error(4, msg) {}
};

} // namespace symweb

#endif
