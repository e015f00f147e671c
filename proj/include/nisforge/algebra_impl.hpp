#pragma once
#include <stdexcept>

namespace nisforge {

template <class BracketFn>
SuperAlgebra from_realization(const Field& F, int ambient, const std::vector<SVec>& family,
                              std::vector<BasisElt> basis, BracketFn&& br) {
  SpanCoords sc(F, ambient, family);
  if (!sc.independent()) throw std::invalid_argument("realization family is not independent");
  SuperAlgebra g(F, std::move(basis));
  int n = (int)family.size();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      SVec v = br(family[i], family[j]);
      if (v.empty()) continue;
      auto c = sc.coords(v);
      if (!c) throw std::runtime_error("bracket of " + g.basis()[i].name + " and " + g.basis()[j].name +
                                       " leaves the span");
      g.set_bracket(i, j, std::move(*c));
    }
  return g;
}

}  // namespace nisforge
