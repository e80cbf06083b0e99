#pragma once

// Exact rational scalars used everywhere in the library. All core computations
// are closed over Q; nothing in this project evaluates an irrational number.
//
// Serialization is the canonical GMP string form "num/den" (den omitted when 1),
// always in lowest terms with the sign on the numerator.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace adlab {

using Rat = mpq_class;
using Int = mpz_class;

// Input that violates a documented precondition (CLI exit code 2).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A pipeline stage that cannot make progress on otherwise valid input
// (CLI exit code 3).
struct PipelineError : std::runtime_error {
  explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

// Canonical "p/q" (or "p") form, lowest terms.
std::string rat_to_string(const Rat& r);

// Accepts "p" and "p/q"; q must be nonzero. Result is canonicalized.
Rat rat_from_string(const std::string& s);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Nearest multiple of grid (grid > 0); exact ties round up. Deterministic.
Rat round_to_grid(const Rat& value, const Rat& grid);

// floor(value) as an exact integer.
Int rat_floor(const Rat& value);

// Decimal approximation for logs/reports only; never feeds back into computation.
std::string rat_approx(const Rat& r, int digits = 6);

}  // namespace adlab
