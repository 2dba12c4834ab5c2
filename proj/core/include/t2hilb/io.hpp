#pragma once

#include <string>

#include "t2hilb/gammas.hpp"
#include "t2hilb/series.hpp"

namespace t2hilb {

// {"numerator": [c0, c1, ...], "denominator": [[e, mult], ...]}
std::string hilbert_series_to_json(const HilbertSeries& H);
HilbertSeries hilbert_series_from_json(const std::string& text);

// Display form mirroring a printed fraction:
// \frac{1}{(1-t^3)(1-t^4)...}\big( 1 + 3t^2 + ... \big)
std::string hilbert_series_to_latex(const HilbertSeries& H);

std::string laurent_to_latex(const LaurentExpansion& L);

}  // namespace t2hilb
