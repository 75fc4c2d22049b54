#pragma once
// height.hpp -- the height of a one-dimensional formal group: a positive
// integer or infinity (the additive group).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace strata {

struct Height {
  bool finite = true;
  std::uint32_t value = 1;

  static Height of(std::uint32_t h) {
    if (h < 1) throw std::invalid_argument("Height: must be >= 1");
    return Height{true, h};
  }
  static Height inf() { return Height{false, 0}; }

  friend bool operator==(const Height&, const Height&) = default;

  std::string to_string() const { return finite ? std::to_string(value) : "inf"; }

  static Height parse(const std::string& s) {
    if (s == "inf") return inf();
    return of(static_cast<std::uint32_t>(std::stoul(s)));
  }
};

}  // namespace strata
