#pragma once

namespace uavjam {

/// exp(x^2) * erfc(x), finite for all x >= 0 where the unscaled product
/// would overflow or underflow.
double scaled_erfc(double x);

}  // namespace uavjam
