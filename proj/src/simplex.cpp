#include "stunted/simplex.hpp"

namespace stunted::word {

DegeneracyWord normalize(const int* ops_innermost_first, int count, Dim base_dim) {
  DegeneracyWord w = 0;
  Dim n = base_dim;
  for (int k = 0; k < count; ++k) {
    const int j = ops_innermost_first[k];
    if (j < 0 || j > n) {
      throw SimplicialError("degeneracy s" + std::to_string(j) + " out of range in dimension " +
                            std::to_string(n));
    }
    w = insert(w, j, true);
    ++n;
  }
  if (n > kMaxDim) throw SimplicialError("dimension exceeds supported maximum");
  return w;
}

std::string to_string(DegeneracyWord w) {
  std::string out;
  for (int j = 63; j >= 0; --j) {
    if (has(w, j)) out += "s" + std::to_string(j);
  }
  return out;
}

}  // namespace stunted::word
