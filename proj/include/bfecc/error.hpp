#pragma once

#include <stdexcept>
#include <string>

namespace bfecc {

enum class Errc {
  invalid_argument = 1,
  rank_deficient,
  scheme_mismatch,
  missing_boundary,
  domain_error,
  unstable,
  io,
};

const char* to_string(Errc code) noexcept;

/// Base exception for everything the library reports. The code maps
/// one-to-one onto the C API's error codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Least-squares stencil whose design matrix is numerically rank deficient.
class RankDeficientError : public Error {
 public:
  RankDeficientError(double sigma_min, const std::string& what)
      : Error(Errc::rank_deficient, what), sigma_min_(sigma_min) {}
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(Errc::invalid_argument, what);
}

}  // namespace bfecc
