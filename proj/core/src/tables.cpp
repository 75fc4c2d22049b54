#include "strata/tables.hpp"

#include <sstream>

#include "strata/dieudonne.hpp"

namespace strata::tables {

const char* to_string(SurfaceType t) {
  switch (t) {
    case SurfaceType::H1: return "h1";
    case SurfaceType::H2: return "h2";
    case SurfaceType::HInfA1: return "ssa1";
    case SurfaceType::HInfA2: return "ssp";
  }
  return "?";
}

SurfaceType surface_type_from_string(const std::string& s) {
  if (s == "h1") return SurfaceType::H1;
  if (s == "h2") return SurfaceType::H2;
  if (s == "ssa1") return SurfaceType::HInfA1;
  if (s == "ssp") return SurfaceType::HInfA2;
  throw std::invalid_argument("unknown surface type: " + s);
}

SurfaceType surface_type_of(curves::CaseType c) {
  switch (c) {
    case curves::CaseType::Ordinary: return SurfaceType::H1;
    case curves::CaseType::PRank1: return SurfaceType::H2;
    case curves::CaseType::SsNotSuperspecial: return SurfaceType::HInfA1;
    case curves::CaseType::Superspecial: return SurfaceType::HInfA2;
  }
  throw std::invalid_argument("surface_type_of: bad case");
}

Height height_of(SurfaceType t) {
  switch (t) {
    case SurfaceType::H1: return Height::of(1);
    case SurfaceType::H2: return Height::of(2);
    default: return Height::inf();
  }
}

namespace {

void need_index(u32 i) {
  if (i < 1) throw std::invalid_argument("tables: sheaf index i must be >= 1");
}

}  // namespace

Dims dim_B(SurfaceType t, u32 i) {
  need_index(i);
  switch (t) {
    case SurfaceType::H1: return {0, 0, 0};
    case SurfaceType::H2: return {1, 2, 1};
    case SurfaceType::HInfA1:
      return i == 1 ? Dims{1, 2, 1} : Dims{2, 2 + i, i};
    case SurfaceType::HInfA2: return {2, 2 + i, i};
  }
  throw std::logic_error("dim_B: unreachable");
}

Dims dim_dOmega(SurfaceType t) {
  switch (t) {
    case SurfaceType::H1: return {0, 0, 0};
    case SurfaceType::H2: return {1, 2, 1};
    case SurfaceType::HInfA1: return {1, 2, 1};
    case SurfaceType::HInfA2: return {1, 3, 2};
  }
  throw std::logic_error("dim_dOmega: unreachable");
}

Dims dim_Z(SurfaceType t, u32 i) {
  need_index(i);
  switch (t) {
    case SurfaceType::H1:
    case SurfaceType::H2: return {2, 4, 2};
    case SurfaceType::HInfA1: return {2, 3 + i, 1 + i};
    case SurfaceType::HInfA2: return {2, 4 + i, 2 + i};
  }
  throw std::logic_error("dim_Z: unreachable");
}

ImageDims image_dims(SurfaceType t, u32 i) {
  need_index(i);
  switch (t) {
    case SurfaceType::H1: return {0, 4};
    case SurfaceType::H2: return {1, std::nullopt};
    case SurfaceType::HInfA1: return {1, 3};
    case SurfaceType::HInfA2: return {0, 4};
  }
  throw std::logic_error("image_dims: unreachable");
}

ConsistencyReport consistency_check() {
  ConsistencyReport rep;
  const fields::FiniteField& F = fields::FiniteField::get(3, 1);
  const SurfaceType types[] = {SurfaceType::H1, SurfaceType::H2, SurfaceType::HInfA1,
                               SurfaceType::HInfA2};
  auto fail = [&](SurfaceType t, u32 i, const std::string& what) {
    std::ostringstream os;
    os << "type " << to_string(t) << ", i = " << i << ": " << what;
    rep.failures.push_back(os.str());
  };
  for (SurfaceType t : types) {
    for (u32 i = 1; i <= 10; ++i) {
      Dims b = dim_B(t, i), z = dim_Z(t, i);
      ++rep.checks;
      if (b.chi() != 0) fail(t, i, "chi(B_i) != 0");
      ++rep.checks;
      if (z.chi() != 0) fail(t, i, "chi(Z_i) != 0");
      // 0 -> B_i -> Z_i -> Omega^1 -> 0 at the Euler-characteristic level,
      // chi(Omega^1) = 2 - 4 + 2 = 0
      ++rep.checks;
      if (z.chi() != b.chi()) fail(t, i, "chi(Z_i) != chi(B_i) + chi(Omega^1)");
      // orthogonality of the images inside the 4-dimensional H^1(Omega^1)
      ImageDims im = image_dims(t, i);
      ++rep.checks;
      if (im.im_Z && im.im_B + *im.im_Z > 4) fail(t, i, "Im B + Im Z > 4");
      // h^1(B_i) = h^0(B_i) + dim Ker F|_{H^2(W_i)}: the Serre-map exact
      // sequence ties the table to the kernel table of the module model
      u32 kf = dieudonne::ker_F_dim(dieudonne::h2_model(height_of(t), i, F));
      ++rep.checks;
      if (b.h1 != b.h0 + kf) fail(t, i, "h^1(B_i) != h^0(B_i) + dim Ker F");
    }
    // chi(dOmega^1) = 0 for every type
    ++rep.checks;
    if (dim_dOmega(t).chi() != 0) fail(t, 0, "chi(dOmega^1) != 0");
  }
  return rep;
}

}  // namespace strata::tables
