#pragma once

#include <string>

#include "lscrystal/analysis.hpp"

namespace lscrystal {

/// Explored crystal subgraph as a GraphViz digraph: nodes carry compact
/// "(m_1,...,m_u | s_1,...,s_{u-1})" labels, edges are labeled f1/f2
/// (e-edges are the same arrows read backwards).
std::string crystal_dot(const ComponentReport& rep);

/// A segment of the orbit Hasse chain: nodes "x_m l = c1*L1 + c2*L2",
/// arrows from x_{m-1} to x_m labeled a1/a2.
std::string hasse_dot(const PSequence& seq, long from, long to);

}  // namespace lscrystal
