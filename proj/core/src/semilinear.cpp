#include "strata/semilinear.hpp"

#include <stdexcept>

namespace strata::semilinear {

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (F_ != o.F_ || cols_ != o.rows_) throw std::invalid_argument("FqMatrix: dimension mismatch");
  FqMatrix r(*F_, rows_, o.cols_);
  for (u32 i = 0; i < rows_; ++i)
    for (u32 k = 0; k < cols_; ++k) {
      u32 aik = at(i, k);
      if (aik == 0) continue;
      for (u32 j = 0; j < o.cols_; ++j)
        r.set(i, j, F_->add(r.at(i, j), F_->mul(aik, o.at(k, j))));
    }
  return r;
}

FqMatrix FqMatrix::frobenius_entrywise(long long r) const {
  FqMatrix m(*F_, rows_, cols_);
  for (u32 i = 0; i < rows_; ++i)
    for (u32 j = 0; j < cols_; ++j) m.set(i, j, F_->frobenius(at(i, j), r));
  return m;
}

std::vector<u32> FqMatrix::apply(const std::vector<u32>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("FqMatrix::apply: dimension mismatch");
  std::vector<u32> out(rows_, 0);
  for (u32 i = 0; i < rows_; ++i)
    for (u32 j = 0; j < cols_; ++j) out[i] = F_->add(out[i], F_->mul(at(i, j), v[j]));
  return out;
}

u32 rank(FqMatrix m) {
  const fields::FiniteField& F = m.field();
  u32 r = 0;
  for (u32 col = 0; col < m.cols() && r < m.rows(); ++col) {
    u32 pivot = r;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (u32 j = 0; j < m.cols(); ++j) {
        u32 t = m.at(r, j);
        m.set(r, j, m.at(pivot, j));
        m.set(pivot, j, t);
      }
    u32 inv = F.inv(m.at(r, col));
    for (u32 i = r + 1; i < m.rows(); ++i) {
      u32 factor = F.mul(m.at(i, col), inv);
      if (factor == 0) continue;
      for (u32 j = col; j < m.cols(); ++j)
        m.set(i, j, F.sub(m.at(i, j), F.mul(factor, m.at(r, j))));
    }
    ++r;
  }
  return r;
}

SigmaLinearMap make_sigma_linear(FqMatrix m, u32 twist) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SigmaLinearMap: matrix must be square");
  if (twist < 1) throw std::invalid_argument("SigmaLinearMap: twist must be >= 1");
  return SigmaLinearMap{std::move(m), twist};
}

std::vector<u32> SigmaLinearMap::apply(const std::vector<u32>& v) const {
  const fields::FiniteField& F = matrix.field();
  std::vector<u32> tw(v.size());
  for (size_t k = 0; k < v.size(); ++k) tw[k] = F.frobenius(v[k], twist);
  return matrix.apply(tw);
}

SigmaLinearMap compose(const SigmaLinearMap& f, const SigmaLinearMap& g) {
  if (&f.matrix.field() != &g.matrix.field() || f.dim() != g.dim())
    throw std::invalid_argument("compose: dimension or field mismatch");
  return SigmaLinearMap{f.matrix * g.matrix.frobenius_entrywise(f.twist), f.twist + g.twist};
}

u32 kernel_dim(const SigmaLinearMap& f) {
  // entrywise Frobenius is bijective on F_q, so the kernel dimension is the
  // corank of the matrix
  return f.dim() - rank(f.matrix);
}

u32 stable_rank(const SigmaLinearMap& f) {
  SigmaLinearMap it = f;
  for (u32 k = 1; k < f.dim(); ++k) it = compose(it, f);
  if (f.dim() == 0) return 0;
  return rank(it.matrix);
}

}  // namespace strata::semilinear
