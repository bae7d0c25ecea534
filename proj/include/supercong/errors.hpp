#pragma once

#include <stdexcept>
#include <string>

namespace supercong {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Residues from different primes were combined.
struct context_mismatch : error {
  using error::error;
};

// Inversion of a residue divisible by p; signals a side-condition
// violation upstream, never a recoverable state.
struct not_invertible : error {
  using error::error;
};

struct denominator_divisible_by_p : error {
  using error::error;
};

struct not_divisible_by_p : error {
  using error::error;
};

// Requested precision exceeds what the context can supply.
struct precision_exhausted : error {
  using error::error;
};

struct not_coprime : error {
  using error::error;
};

struct index_out_of_range : error {
  using error::error;
};

// A harmonic-type sum hit a term divisible by p.
struct term_not_invertible : error {
  using error::error;
};

struct degenerate_denominator : error {
  using error::error;
};

// Brute-force oracle produced a value with p in the denominator.
struct not_p_integral : error {
  using error::error;
};

struct side_condition_violated : error {
  using error::error;
};

struct usage_error : error {
  using error::error;
};

}  // namespace supercong
