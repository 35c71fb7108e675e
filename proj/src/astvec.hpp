#ifndef SEQTREE_ASTVEC_HPP
#define SEQTREE_ASTVEC_HPP

#include <stdexcept>
#include <vector>

#include "transition.hpp"

namespace seqtree {

// Two-dimensional position vector of a node/action: depth (vertical) and
// horiz (horizontal). Root is (0,0); all vectors within one tree are
// pairwise distinct.
struct NodeVector {
  long depth = 0;
  long horiz = 0;
  bool operator==(const NodeVector&) const = default;
};

struct AstVecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Assigns position vectors to a parent-consistent action sequence: the root
// gets (0,0); a parent's first child inherits the parent's horizontal
// coordinate at depth+1; every later child gets the running horizontal
// counter + 1. Throws AstVecError on inconsistent parent links.
std::vector<NodeVector> ast2vec(const std::vector<ActionStep>& steps);

// Recovers parent positions from vectors of a pre-order sequence: the parent
// of node t is the nearest earlier node whose depth is one less and whose
// horizontal coordinate does not exceed node t's. Returns 0-based indices,
// -1 for the root. Throws AstVecError when no candidate exists.
std::vector<int> vec2parents(const std::vector<NodeVector>& vectors);

// Component-wise b - a.
NodeVector displacement(const NodeVector& a, const NodeVector& b);

// Euclidean norm.
double vec_norm(const NodeVector& v);

}  // namespace seqtree

#endif
