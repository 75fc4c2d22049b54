#pragma once
// ghost_oracle.hpp -- independent lift-to-Z/p^n oracle for Witt arithmetic
// over F_p.  Lift the coordinates to integers, combine the ghost components
// w_i = sum_j p^j x_j^{p^(i-j)} in Z/p^n, and solve back for the result
// coordinates.  Dividing by p^i leaves i fewer tracked p-adic digits, which
// is exactly enough to pin the i-th coordinate mod p.  This never touches
// the universal polynomial tables or the carry decomposition, so it is an
// independent route.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u64 opow(u64 b, u64 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

inline u64 opowmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<unsigned __int128>(r) * a % m);
    a = static_cast<u64>(static_cast<unsigned __int128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

enum class GhostOp { Add, Mul };

inline std::vector<u32> ghost_combine(u32 p, const std::vector<u32>& a,
                                      const std::vector<u32>& b, GhostOp op) {
  const u32 n = static_cast<u32>(a.size());
  const u64 M = opow(p, n);
  auto ghost = [&](const std::vector<u32>& x, u32 i) {
    u64 acc = 0, pj = 1;
    for (u32 j = 0; j <= i; ++j, pj *= p)
      acc = (acc + pj % M * opowmod(x[j], opow(p, i - j), M)) % M;
    return acc;
  };
  std::vector<u64> lift(n, 0);
  std::vector<u32> out(n, 0);
  for (u32 i = 0; i < n; ++i) {
    u64 target = op == GhostOp::Add ? (ghost(a, i) + ghost(b, i)) % M
                                    : static_cast<u64>(static_cast<unsigned __int128>(ghost(a, i)) *
                                                       ghost(b, i) % M);
    u64 acc = 0, pj = 1;
    for (u32 j = 0; j < i; ++j, pj *= p)
      acc = (acc + pj * opowmod(lift[j], opow(p, i - j), M)) % M;
    u64 num = (target + M - acc) % M;
    u64 pi = opow(p, i);
    if (num % pi != 0) throw std::logic_error("ghost oracle: non-exact division");
    lift[i] = num / pi;  // valid mod p^(n-i)
    out[i] = static_cast<u32>(lift[i] % p);
  }
  return out;
}

inline std::vector<u32> ghost_add(u32 p, const std::vector<u32>& a, const std::vector<u32>& b) {
  return ghost_combine(p, a, b, GhostOp::Add);
}
inline std::vector<u32> ghost_mul(u32 p, const std::vector<u32>& a, const std::vector<u32>& b) {
  return ghost_combine(p, a, b, GhostOp::Mul);
}

}  // namespace oracle
