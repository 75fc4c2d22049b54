#include "strata/dieudonne.hpp"

namespace strata::dieudonne {

using semilinear::FqMatrix;

TruncatedDieudonne::TruncatedDieudonne(Height h, u32 len, const fields::FiniteField& F)
    : h_(h), len_(len), F_(&F) {
  if (len < 1) throw std::invalid_argument("TruncatedDieudonne: length must be >= 1");
}

FqMatrix TruncatedDieudonne::frobenius_matrix() const {
  FqMatrix M(*F_, len_, len_);
  if (!h_.finite) return M;  // F = 0
  const u32 shift = h_.value - 1;
  for (u32 j = 0; j + shift < len_; ++j) M.set(j + shift, j, 1);
  return M;
}

FqMatrix TruncatedDieudonne::verschiebung_matrix() const {
  FqMatrix M(*F_, len_, len_);
  for (u32 j = 0; j + 1 < len_; ++j) M.set(j + 1, j, 1);
  return M;
}

std::vector<u32> TruncatedDieudonne::apply_F(const std::vector<u32>& v) const {
  std::vector<u32> w(len_, 0);
  if (!h_.finite) return w;
  const u32 shift = h_.value - 1;
  for (u32 j = 0; j + shift < len_; ++j) w[j + shift] = F_->frobenius(v[j], 1);
  return w;
}

std::vector<u32> TruncatedDieudonne::apply_V(const std::vector<u32>& v) const {
  std::vector<u32> w(len_, 0);
  for (u32 j = 0; j + 1 < len_; ++j) w[j + 1] = F_->frobenius(v[j], -1);
  return w;
}

std::vector<u32> TruncatedDieudonne::apply_R(const std::vector<u32>& v) const {
  return std::vector<u32>(v.begin(), v.end() - 1);
}

bool TruncatedDieudonne::frobenius_is_zero() const {
  return !h_.finite || h_.value - 1 >= len_;
}

TruncatedDieudonne h2_model(Height h, u32 i, const fields::FiniteField& F) {
  if (i < 1) throw std::invalid_argument("h2_model: length must be >= 1");
  return TruncatedDieudonne(h, i, F);
}

u32 ker_F_dim(const TruncatedDieudonne& m) {
  if (!m.height().finite) return m.len();
  return semilinear::kernel_dim(
      semilinear::make_sigma_linear(m.frobenius_matrix(), 1));
}

Height height_from_models(Height h_true, u32 i_max, const fields::FiniteField& F) {
  if (h_true.finite && i_max < h_true.value)
    throw std::invalid_argument("height_from_models: i_max below the finite height");
  for (u32 i = 1; i <= i_max; ++i)
    if (!h2_model(h_true, i, F).frobenius_is_zero()) return Height::of(i);
  return Height::inf();
}

bool phi2_vanishes(const TruncatedDieudonne& m) {
  if (m.len() != 2)
    throw std::invalid_argument("phi2_vanishes: needs the length-2 model");
  if (m.height().finite && m.height().value < 2)
    throw std::invalid_argument(
        "phi2_vanishes: F must vanish on the length-1 quotient (h >= 2)");
  // phi_2 sends the class of e_0 to the V-part component of F e_0; it is
  // nonzero exactly when F e_0 = e_1, i.e. h = 2
  semilinear::FqMatrix M = m.frobenius_matrix();
  return M.at(1, 0) == 0;
}

}  // namespace strata::dieudonne
