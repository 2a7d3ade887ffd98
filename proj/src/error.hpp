#pragma once

#include <stdexcept>
#include <string>

namespace atgm {

enum class errc {
  invalid_argument,
  degenerate_input,
  dimension_mismatch,
  unsupported_dimension,
  shape,
  capacity,
  numeric,
  parse,
  io,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace atgm
