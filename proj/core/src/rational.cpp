#include "fibral/rational.hpp"

#include <cctype>

#include "fibral/error.hpp"

namespace fibral {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::DuplicateIdentifier: return "duplicate identifier";
    case ErrorCode::NonRationalNumeral: return "non-rational numeral";
    case ErrorCode::UnknownIdentifier: return "unknown identifier";
    case ErrorCode::PlaceMismatch: return "place mismatch";
    case ErrorCode::ProfileUndefinedAtPlace: return "profile undefined at place";
    case ErrorCode::InvalidFiber: return "invalid fiber";
    case ErrorCode::NotSemidefinite: return "not semidefinite";
    case ErrorCode::KernelTooLarge: return "kernel too large";
    case ErrorCode::InvalidKernelProblem: return "invalid kernel problem";
    case ErrorCode::ChoiceMismatch: return "choice mismatch";
    case ErrorCode::UnsolvableSystem: return "unsolvable system";
    case ErrorCode::TorsionRequired: return "class group torsion required";
    case ErrorCode::WidthGuardExceeded: return "width guard exceeded";
    case ErrorCode::KeyMismatch: return "key mismatch";
    case ErrorCode::SupportCollision: return "support collision";
    case ErrorCode::NonzeroPairing: return "nonzero pairing";
    case ErrorCode::NotFiberMultiple: return "not a fiber multiple";
    case ErrorCode::InvalidSurface: return "invalid surface";
    case ErrorCode::InternalInconsistency: return "internal inconsistency";
    case ErrorCode::ReplayMismatch: return "replay mismatch";
    case ErrorCode::CertificateBinding: return "certificate binding";
    case ErrorCode::IoError: return "i/o error";
    case ErrorCode::UsageError: return "usage error";
  }
  return "error";
}

Rational parse_rational(std::string_view text) {
  const auto fail = [&]() -> Rational {
    throw Error(ErrorCode::NonRationalNumeral,
                "'" + std::string(text) + "' is not an exact rational (expected \"p\" or \"p/q\")");
  };

  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t numerator_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++numerator_digits;
  }
  if (numerator_digits == 0) return fail();

  bool denominator_zero = false;
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::size_t denominator_digits = 0;
    denominator_zero = true;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (text[i] != '0') denominator_zero = false;
      ++i;
      ++denominator_digits;
    }
    if (denominator_digits == 0) return fail();
  }
  if (i != text.size()) return fail();
  if (denominator_zero) {
    throw Error(ErrorCode::NonRationalNumeral,
                "'" + std::string(text) + "' has a zero denominator");
  }

  Rational value;
  if (mpq_set_str(value.get_mpq_t(), std::string(text).c_str(), 10) != 0) return fail();
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  // get_str renders the stored numerator/denominator verbatim, so reduce a
  // copy first: two-argument construction may leave the value uncanonical.
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const std::vector<Rational>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(values[i]);
  }
  out += "]";
  return out;
}

bool is_integral(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_den() == 1;
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer result = 1;
  for (const Rational& v : values) {
    Rational canonical = v;
    canonical.canonicalize();
    Integer den = canonical.get_den();
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), den.get_mpz_t());
  }
  return result;
}

}  // namespace fibral
