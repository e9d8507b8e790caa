#ifndef EVOMLP_ERROR_HPP
#define EVOMLP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace evomlp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes disagree with a topology or with each other.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Rejected user input: configuration bounds, malformed data, degenerate datasets.
/// Carries every problem found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : Error(join(problems)), problems_(std::move(problems)) {}
    explicit ValidationError(const std::string& problem)
        : ValidationError(std::vector<std::string>{problem}) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& problems) {
        std::string out;
        for (const auto& p : problems) {
            if (!out.empty())
                out += "; ";
            out += p;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A model file that is truncated, malformed or internally inconsistent.
class CorruptModelError : public Error {
public:
    using Error::Error;
};

}  // namespace evomlp

#endif  // EVOMLP_ERROR_HPP
