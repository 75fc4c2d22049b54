#pragma once
// dieudonne.hpp -- the truncated module model of H^2(A, W_i(O_A)): a
// length-i space with basis e_0..e_{i-1} carrying the shift-type operators
//   F (sigma-linear):      e_j -> e_{j+h-1}   (zero map when h = infinity)
//   V (sigma^{-1}-linear): e_j -> e_{j+1}, e_{i-1} -> 0
//   R:                     projection dropping e_{i-1}
// The V-filtration has one-dimensional graded pieces, matching the exact
// sequence 0 -> H^2(W_{i-1}) -V-> H^2(W_i) -R^{i-1}-> H^2(O_A) -> 0.
// F is normalized to the exact shift with unit coefficient; every quantity
// computed from the model (kernel dimensions, vanishing, minimal
// non-vanishing length) is insensitive to that unit.

#include "strata/fields.hpp"
#include "strata/height.hpp"
#include "strata/semilinear.hpp"

namespace strata::dieudonne {

using fields::u32;

class TruncatedDieudonne {
 public:
  TruncatedDieudonne(Height h, u32 len, const fields::FiniteField& F);

  Height height() const { return h_; }
  u32 len() const { return len_; }
  const fields::FiniteField& field() const { return *F_; }

  // matrix of F as a twist-1 sigma-linear map
  semilinear::FqMatrix frobenius_matrix() const;
  // matrix of V (applied together with an entrywise inverse Frobenius)
  semilinear::FqMatrix verschiebung_matrix() const;
  // apply F / V to coordinate vectors
  std::vector<u32> apply_F(const std::vector<u32>& v) const;
  std::vector<u32> apply_V(const std::vector<u32>& v) const;
  // restriction to the length-(len-1) model
  std::vector<u32> apply_R(const std::vector<u32>& v) const;

  bool frobenius_is_zero() const;

 private:
  Height h_;
  u32 len_;
  const fields::FiniteField* F_;
};

// model of H^2(A, W_i(O_A)) for a surface whose formal Brauer group has
// height h; F is invertible iff h = 1
TruncatedDieudonne h2_model(Height h, u32 i, const fields::FiniteField& F);

// dim over the base field of Ker F on the model:
// 0 (h = 1), 1 (h = 2), i (h = infinity); min(i, h-1) in general
u32 ker_F_dim(const TruncatedDieudonne& m);

// builds models for i = 1..i_max and returns min{ i : F != 0 on H^2(W_i) },
// or infinity if F vanishes on all of them
Height height_from_models(Height h_true, u32 i_max, const fields::FiniteField& F);

// phi_2: H^2(O_A) = H^2(W_2)/V H^2(O_A) -> V H^2(O_A) = H^2(O_A), the
// sigma^2-linear map induced by F once F vanishes on the length-1 quotient.
// Requires a length-2 model with h >= 2; true iff phi_2 = 0.
bool phi2_vanishes(const TruncatedDieudonne& m);

}  // namespace strata::dieudonne
