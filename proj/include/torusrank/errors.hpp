#ifndef TORUSRANK_ERRORS_HPP
#define TORUSRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torusrank {

enum class ErrorKind {
    Shape,           // dimension/shape mismatch in matrix or vector input
    Domain,          // argument outside the operation's domain
    Degenerate,      // rank-deficient / zero-volume input
    NotACellComplex, // quotient with d = 1: a same-orbit edge exists
    NoValidOrder,    // no vertex labeling restricts to a total order per cell
    Budget,          // enumeration budget exceeded
    Parse,           // malformed input file
    Verify,          // verification mismatch
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace torusrank

#endif
