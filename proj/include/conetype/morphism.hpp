#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "conetype/error.hpp"
#include "conetype/multigraph.hpp"

namespace conetype {

/// A morphism of rooted directed multigraphs: a vertex map and an edge map
/// commuting with source and target and preserving the root.
struct GraphMorphism {
  Multigraph source;
  Multigraph target;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;

  const std::string& vertex_image(const std::string& q) const {
    auto it = vertex_map.find(q);
    if (it == vertex_map.end()) fail(Errc::UnknownState, "vertex map undefined on '" + q + "'");
    return it->second;
  }

  const std::string& edge_image(const std::string& e) const {
    auto it = edge_map.find(e);
    if (it == edge_map.end()) fail(Errc::UnknownEdge, "edge map undefined on '" + e + "'");
    return it->second;
  }
};

inline GraphMorphism identity_morphism(const Multigraph& g) {
  GraphMorphism m{g, g, {}, {}};
  for (const std::string& q : g.states()) m.vertex_map[q] = q;
  for (const Edge& e : g.edges()) m.edge_map[e.id] = e.id;
  return m;
}

/// Checks that the maps are total, land in the target, preserve the root and
/// commute with source/target functions.
inline void verify_morphism(const GraphMorphism& m) {
  for (const std::string& q : m.source.states()) {
    const std::string& img = m.vertex_image(q);
    if (!m.target.has_state(img))
      fail(Errc::UnknownState, "vertex image '" + img + "' not in target");
  }
  if (m.vertex_image(m.source.root()) != m.target.root())
    fail(Errc::RootNotPreserved, "root maps to '" + m.vertex_image(m.source.root()) + "'");
  for (const Edge& e : m.source.edges()) {
    const std::string& img = m.edge_image(e.id);
    if (!m.target.has_edge(img)) fail(Errc::UnknownEdge, "edge image '" + img + "' not in target");
    const Edge& f = m.target.edge(img);
    if (f.src != m.vertex_image(e.src) || f.dst != m.vertex_image(e.dst))
      fail(Errc::EdgeEndpointMismatch, "edge '" + e.id + "'");
  }
}

/// Certifies a covering morphism: a morphism onto a connected target whose
/// edge map restricts to a bijection from every out-edge set q+ onto the
/// out-edge set of the image vertex. Such maps have unique path lifting.
inline void verify_covering(const GraphMorphism& m) {
  verify_morphism(m);
  if (!is_connected(m.target)) fail(Errc::TargetNotConnected, "target is not connected");
  for (const std::string& q : m.source.states()) {
    const std::string& p = m.vertex_image(q);
    std::set<std::string> images;
    for (size_t i : m.source.out_edges(q)) {
      const std::string& img = m.edge_image(m.source.edges()[i].id);
      if (!images.insert(img).second)
        fail(Errc::NotLocallyInjective, "two out-edges of '" + q + "' map to '" + img + "'");
    }
    if (images.size() != m.target.out_degree(p))
      fail(Errc::NotLocallySurjective,
           "out-edges of '" + q + "' do not cover out-edges of '" + p + "'");
  }
}

/// Unique path lifting: the unique path from `start` whose image is the given
/// edge-id path in the target. Callers must have certified the covering.
inline std::vector<std::string> lift_path(const GraphMorphism& m, const std::string& start,
                                          const std::vector<std::string>& downstairs) {
  std::string q = start;
  std::string p = m.vertex_image(start);
  std::vector<std::string> lifted;
  lifted.reserve(downstairs.size());
  for (const std::string& eid : downstairs) {
    const Edge& e = m.target.edge(eid);
    if (e.src != p) {
      if (lifted.empty() && e.src != m.vertex_image(start))
        fail(Errc::WrongStartVertex, "path starts at '" + e.src + "', expected '" + p + "'");
      fail(Errc::NotAPath, "edge '" + eid + "' does not continue the path at '" + p + "'");
    }
    const std::string* up = nullptr;
    for (size_t i : m.source.out_edges(q)) {
      const Edge& cand = m.source.edges()[i];
      if (m.edge_image(cand.id) == eid) {
        up = &cand.id;
        q = cand.dst;
        break;
      }
    }
    if (!up) fail(Errc::NotLocallySurjective, "no lift of '" + eid + "' at '" + q + "'");
    lifted.push_back(*up);
    p = e.dst;
  }
  return lifted;
}

/// Component-wise composition m2 after m1.
inline GraphMorphism compose(const GraphMorphism& m2, const GraphMorphism& m1) {
  if (!(m1.target == m2.source))
    fail(Errc::DomainMismatch, "inner target differs from outer source");
  GraphMorphism m{m1.source, m2.target, {}, {}};
  for (const auto& [q, img] : m1.vertex_map) m.vertex_map[q] = m2.vertex_image(img);
  for (const auto& [e, img] : m1.edge_map) m.edge_map[e] = m2.edge_image(img);
  return m;
}

}  // namespace conetype
