#pragma once

// Deterministic CSV formatting: 17 significant digits, '.' decimal separator,
// '\n' line endings, so identical inputs produce byte-identical files.

#include <span>
#include <string>

namespace qie::cli {

/// printf "%.17g" (C locale).
std::string format_g17(double v);

/// Joins formatted values with commas, no trailing newline.
std::string csv_row(std::span<const double> values);

}  // namespace qie::cli
