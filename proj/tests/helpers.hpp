#pragma once

#include <cstdint>
#include <vector>

#include "crossed/field.hpp"

namespace testutil {

// deterministic generator so failures reproduce exactly
struct Rng {
  uint64_t state = 0x9e3779b97f4a7c15ull;
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

inline crossed::FieldElement random_element(const crossed::FieldPtr& f, Rng& rng,
                                            int max_deg = 3) {
  using namespace crossed;
  if (f->finite()) return f->element_at(rng.below(f->size()));
  const auto& base = f->base();
  auto random_poly = [&](bool nonzero) {
    std::vector<FqElem> po;
    int d = (int)rng.below((uint64_t)max_deg + 1);
    for (int i = 0; i <= d; ++i) po.push_back(base->element_at(rng.below(base->size())).fq());
    if (nonzero) {
      bool all_zero = true;
      for (auto& c : po) {
        if (!c.empty()) all_zero = false;
      }
      if (all_zero) po.back() = base->one().fq();
    }
    return po;
  };
  return f->from_fraction(random_poly(false), random_poly(true));
}

inline crossed::FieldElement random_unit(const crossed::FieldPtr& f, Rng& rng, int max_deg = 3) {
  for (;;) {
    auto x = random_element(f, rng, max_deg);
    if (!x.is_zero()) return x;
  }
}

}  // namespace testutil
