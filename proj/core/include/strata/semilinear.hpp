#pragma once
// semilinear.hpp -- sigma^r-linear endomorphisms of finite-dimensional
// F_{p^d}-spaces: v |-> M v^{(p^r)}, with v^{(p^r)} the entrywise Frobenius.
// Kernels of iterates and the stabilized rank are what "F bijective /
// nilpotent / zero" means computationally.

#include <cstdint>
#include <vector>

#include "strata/fields.hpp"

namespace strata::semilinear {

using fields::u32;

// Dense matrix over F_q, row-major packed codes.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(const fields::FiniteField& F, u32 rows, u32 cols)
      : F_(&F), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
  static FqMatrix identity(const fields::FiniteField& F, u32 n) {
    FqMatrix m(F, n, n);
    for (u32 i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  const fields::FiniteField& field() const { return *F_; }
  u32 rows() const { return rows_; }
  u32 cols() const { return cols_; }
  u32 at(u32 r, u32 c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
  void set(u32 r, u32 c, u32 v) { a_[static_cast<size_t>(r) * cols_ + c] = v; }
  bool is_zero() const {
    for (u32 v : a_)
      if (v) return false;
    return true;
  }

  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.F_ == b.F_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  FqMatrix operator*(const FqMatrix& o) const;
  // entrywise a |-> a^(p^r); r may be negative
  FqMatrix frobenius_entrywise(long long r) const;
  std::vector<u32> apply(const std::vector<u32>& v) const;  // M v

 private:
  const fields::FiniteField* F_ = nullptr;
  u32 rows_ = 0, cols_ = 0;
  std::vector<u32> a_;
};

// rank by Gaussian elimination (exact over F_q)
u32 rank(FqMatrix m);

// v |-> M v^{(p^twist)}, twist >= 1
struct SigmaLinearMap {
  FqMatrix matrix;
  u32 twist = 1;

  u32 dim() const { return matrix.rows(); }
  std::vector<u32> apply(const std::vector<u32>& v) const;
};

SigmaLinearMap make_sigma_linear(FqMatrix m, u32 twist);

// f o g: twist adds, matrix is M_f * (M_g)^{(p^{r_f})}
SigmaLinearMap compose(const SigmaLinearMap& f, const SigmaLinearMap& g);

// dim over F_q of { v : M v^{(p^r)} = 0 } = corank of M
u32 kernel_dim(const SigmaLinearMap& f);

// rank of the dim(V)-fold composite of f with itself
u32 stable_rank(const SigmaLinearMap& f);

}  // namespace strata::semilinear
