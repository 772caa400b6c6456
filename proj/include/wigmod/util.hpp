#pragma once

#include <complex>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wigmod {

using cplx = std::complex<double>;

/// Error codes for every failure mode the library reports.
enum class Errc {
  non_hermitian,
  not_psd,
  shape_mismatch,
  low_modular_dimension,
  non_self_adjoint,
  ill_defined,
  parity_ambiguous,
  parity_contradiction,
  not_a_unitary,
  phase_inconsistent,
  not_unitary,
  sign_chain_broken,
  not_orthogonal,
  invalid_spec,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, double residual = 0.0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        residual_(residual) {}

  Errc code() const { return code_; }
  // Diagnostic magnitude attached to the failure (e.g. the measured
  // welldef_residual for ill_defined), 0 when not applicable.
  double residual() const { return residual_; }

 private:
  Errc code_;
  double residual_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what,
                              double residual = 0.0) {
  throw Error(code, what, residual);
}

// --- deterministic randomness ------------------------------------------
//
// All randomness in the library flows through explicit 64-bit seeds.
// Distribution sampling avoids std::*_distribution (implementation
// defined) so that identical seeds give identical bytes everywhere.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and salt words.
inline std::uint64_t mix_seed(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> salts) {
  std::uint64_t s = seed ^ 0x6a09e667f3bcc909ull;
  for (std::uint64_t w : salts) {
    s ^= w + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    splitmix64(s);
  }
  return splitmix64(s);
}

/// Seeded stream of uniforms and Gaussians on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (no cached second value).
  double gauss() {
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  cplx cgauss() { return {gauss(), gauss()}; }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// --- canonical byte hashing --------------------------------------------
//
// Oracles realize phase functions as hashes of the input's canonical
// byte serialization: doubles as little-endian IEEE-754 bit patterns,
// with -0.0 canonicalized to +0.0 so every representable vector has
// exactly one byte image.

inline void append_canonical_double(std::vector<std::uint8_t>& out, double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0.0
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                             std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ splitmix64(seed);
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  // final avalanche so low-entropy inputs spread over the full word
  return splitmix64(h);
}

/// Unit-modulus scalar exp(2*pi*i*t) with t derived from a hash word.
inline cplx phase_from_hash(std::uint64_t h) {
  double t = static_cast<double>(h >> 11) * 0x1.0p-53;
  double th = 2.0 * 3.141592653589793238462643383279502884 * t;
  return {std::cos(th), std::sin(th)};
}

inline double sign_from_hash(std::uint64_t h) { return (h & 1u) ? 1.0 : -1.0; }

/// Value in [-1, 1] derived from a hash word.
inline double unit_interval_from_hash(std::uint64_t h) {
  return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace wigmod
