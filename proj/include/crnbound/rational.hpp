#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

RationalVector to_rational(const IntVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

// Scales a rational vector by a positive factor so that its entries are
// coprime integers. The zero vector is returned unchanged.
RationalVector primitive(RationalVector v);

std::vector<double> to_double(const RationalVector& v);

}  // namespace crn
