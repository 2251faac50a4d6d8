#include "bfecc/error.hpp"

namespace bfecc {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::rank_deficient: return "rank-deficient stencil";
    case Errc::scheme_mismatch: return "scheme/grid mismatch";
    case Errc::missing_boundary: return "missing boundary treatment";
    case Errc::domain_error: return "domain error";
    case Errc::unstable: return "instability detected";
    case Errc::io: return "i/o error";
  }
  return "unknown error";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bfecc
