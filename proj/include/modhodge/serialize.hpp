#pragma once
// JSON front end.  Scalars travel as strings, matrices as row-major arrays
// of entry strings, structured objects as documents whose key set identifies
// the kind, so no envelope is needed.  Serialization uses a fixed field
// order and a trailing newline; identical objects produce identical bytes.

#include <stdexcept>
#include <string>
#include <variant>

#include "modhodge/curve.hpp"

namespace modhodge {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AnyObject = std::variant<Scalar, KMatrix, MHS, MHSMObject, LaumonMotive, CurveTriple>;

// scalar | matrix | mhs | mhsm | laumon | triple
std::string kind_of(const AnyObject& o);

std::string serialize(const AnyObject& o);
AnyObject parse_object(const std::string& text);  // throws ParseError with location

// status pass/fail plus one entry per clause; timing is pinned to null so
// reruns stay byte-identical
std::string report_json(const Report& r, const std::string& status_override = "");

// divisor literal: "m[p]" terms joined by "+", multiplicity 1 when omitted,
// coordinates as exact rationals, "inf" for the point at infinity
RawDivisor parse_divisor(const std::string& text);  // throws ParseError
std::string divisor_str(const P1Divisor& d);

}  // namespace modhodge
