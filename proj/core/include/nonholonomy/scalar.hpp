#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nonholonomy {

/// Exact rational. mpq_class keeps the canonical form (gcd 1, denominator > 0)
/// after every arithmetic operation.
using Scalar = mpq_class;

/// A point of a chart, one Scalar per coordinate.
using Point = std::vector<Scalar>;

/// "p/q" or "p"; accepts an optional leading sign. Throws InputError.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& s);

/// "(1, -1/2, 0)"
std::string to_string(std::span<const Scalar> pt);

}  // namespace nonholonomy
