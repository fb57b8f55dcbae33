#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lincyc {

enum class ErrorKind {
  NonUniformEdge,
  DuplicatePair,
  VertexOutOfRange,
  NotPartite,
  EmptyCore,
  PreconditionFailed,
  NotFound,
  RetriesExhausted,
  SingletonSet,
  Infeasible,
  TooLarge,
  BudgetExceeded,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by LinearHypergraph::build. For DuplicatePair, `u`,`v` is the
/// shared pair and `first`,`second` the two edge ids that contain it.
class BuildError : public Error {
 public:
  BuildError(ErrorKind kind, const std::string& what, std::uint32_t first_edge,
             std::uint32_t second_edge = 0, std::uint32_t u = 0, std::uint32_t v = 0)
      : Error(kind, what), first(first_edge), second(second_edge), u(u), v(v) {}

  std::uint32_t first;
  std::uint32_t second;
  std::uint32_t u;
  std::uint32_t v;
};

}  // namespace lincyc
