#pragma once
// tables.hpp -- the cohomology dimension tables for the four surface types
// (ordinary, p-rank 1, supersingular a=1, superspecial), keyed by the sheaf
// index i, plus the internal consistency identities that guard against
// transcription errors: vanishing Euler characteristics, the orthogonality
// bound for the images inside the 4-dimensional H^1(Omega^1), and the
// kernel-of-F linkage h^1(B_i) = h^0(B_i) + dim Ker F|_{H^2(W_i)}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/curves.hpp"

namespace strata::tables {

using fields::u32;

enum class SurfaceType { H1, H2, HInfA1, HInfA2 };

const char* to_string(SurfaceType t);
SurfaceType surface_type_from_string(const std::string& s);
// the four types biject with the classification cases
SurfaceType surface_type_of(curves::CaseType c);
Height height_of(SurfaceType t);

struct Dims {
  u32 h0 = 0, h1 = 0, h2 = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
  int chi() const { return static_cast<int>(h0) - static_cast<int>(h1) + static_cast<int>(h2); }
};

// h^j(A, B_i), i >= 1
Dims dim_B(SurfaceType t, u32 i);
// h^j(A, dOmega^1)
Dims dim_dOmega(SurfaceType t);
// h^j(A, Z_i), i >= 1
Dims dim_Z(SurfaceType t, u32 i);

// dimensions of the images of H^1(B_i) and H^1(Z_i) in H^1(Omega^1);
// the Z-image for the p-rank-1 type is not pinned down (only bounded by
// orthogonality), so it is reported as absent rather than guessed.
struct ImageDims {
  u32 im_B = 0;
  std::optional<u32> im_Z;
};
ImageDims image_dims(SurfaceType t, u32 i);

struct ConsistencyReport {
  u32 checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// runs every identity for all four types and i <= 10
ConsistencyReport consistency_check();

}  // namespace strata::tables
