#include "astvec.hpp"

#include <cmath>

namespace seqtree {

std::vector<NodeVector> ast2vec(const std::vector<ActionStep>& steps) {
  std::vector<NodeVector> vectors(steps.size());
  std::vector<bool> visited_as_parent(steps.size() + 1, false);
  long maxn = 0;
  for (size_t i = 0; i < steps.size(); ++i) {
    int parent = steps[i].parent_index;
    if (i == 0) {
      if (parent != 0) throw AstVecError("first action must have parent index 0");
      vectors[0] = NodeVector{0, 0};
      continue;
    }
    if (parent <= 0 || parent > static_cast<int>(i))
      throw AstVecError("inconsistent parent link at step " + std::to_string(i + 1) +
                        ": parent " + std::to_string(parent));
    if (steps[parent - 1].action.kind != ActionKind::ApplyRule)
      throw AstVecError("parent of step " + std::to_string(i + 1) + " is not an ApplyRule");
    const NodeVector& vp = vectors[parent - 1];
    if (!visited_as_parent[parent]) {
      vectors[i] = NodeVector{vp.depth + 1, vp.horiz};
      visited_as_parent[parent] = true;
    } else {
      ++maxn;
      vectors[i] = NodeVector{vp.depth + 1, maxn};
    }
  }
  return vectors;
}

std::vector<int> vec2parents(const std::vector<NodeVector>& vectors) {
  std::vector<int> parents(vectors.size(), -1);
  for (size_t i = 1; i < vectors.size(); ++i) {
    int found = -1;
    for (size_t j = i; j-- > 0;) {
      if (vectors[j].depth == vectors[i].depth - 1 && vectors[j].horiz <= vectors[i].horiz) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0)
      throw AstVecError("no candidate parent for node " + std::to_string(i) +
                        ": malformed vector set");
    parents[i] = found;
  }
  return parents;
}

NodeVector displacement(const NodeVector& a, const NodeVector& b) {
  return NodeVector{b.depth - a.depth, b.horiz - a.horiz};
}

double vec_norm(const NodeVector& v) {
  return std::sqrt(static_cast<double>(v.depth) * v.depth +
                   static_cast<double>(v.horiz) * v.horiz);
}

}  // namespace seqtree
