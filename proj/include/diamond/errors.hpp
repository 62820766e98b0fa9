#ifndef DIAMOND_ERRORS_HPP
#define DIAMOND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diamond {

enum class ErrorCode {
  Domain,             // argument outside the mathematical domain (t <= 0, bad angle, ...)
  Range,              // index outside the configured depth or grid
  Parse,              // malformed JSON / CSV input
  Capacity,           // exact-arithmetic width or problem-size limit exceeded
  InsufficientDepth,  // requested tolerance not certifiable at the configured depth
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace diamond

#endif
