#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modcoeff {

enum class Errc {
  EmptyRange,
  Resource,
  BadReduction,
  DeligneViolation,
  DegenerateAngle,
  Domain,
  UnsupportedWeight,
  Precision,
  Degree,
  ZeroForm,
  Range,
  Hypothesis,
  InvariantViolation,
  InvalidArgument,
  Io,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::EmptyRange: return "empty-range";
    case Errc::Resource: return "resource";
    case Errc::BadReduction: return "bad-reduction";
    case Errc::DeligneViolation: return "deligne-violation";
    case Errc::DegenerateAngle: return "degenerate-angle";
    case Errc::Domain: return "domain";
    case Errc::UnsupportedWeight: return "unsupported-weight";
    case Errc::Precision: return "precision";
    case Errc::Degree: return "degree";
    case Errc::ZeroForm: return "zero-form";
    case Errc::Range: return "range";
    case Errc::Hypothesis: return "hypothesis";
    case Errc::InvariantViolation: return "invariant-violation";
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::Io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace modcoeff
