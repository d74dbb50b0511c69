#include "manetsim/protocol.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace manetsim {

std::map<NodeId, RouteEntry> compute_hop_routes(
    NodeId self, const std::map<NodeId, std::vector<NodeId>>& adjacency,
    SimTime now) {
  // Flat id-indexed arrays: this runs once per topology change and sits on
  // the data path, so it has to be cheap.
  NodeId max_id = self;
  for (const auto& [u, nbrs] : adjacency) {
    max_id = std::max(max_id, u);
    for (NodeId v : nbrs) max_id = std::max(max_id, v);
  }
  const int m = max_id + 1;

  // Symmetrize and sort neighbor lists for deterministic traversal.
  std::vector<std::vector<NodeId>> adj(m);
  for (const auto& [u, nbrs] : adjacency) {
    for (NodeId v : nbrs) {
      if (u == v) continue;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  std::vector<int> dist(m, -1);
  dist[self] = 0;
  std::deque<NodeId> frontier{self};
  int max_level = 0;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : adj[u]) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      max_level = std::max(max_level, dist[v]);
      frontier.push_back(v);
    }
  }

  // Next hop per destination: the minimal-id predecessor chain. Nodes are
  // processed in increasing distance and ascending id within a level, so
  // min-next-hop is stable.
  std::map<NodeId, RouteEntry> routes;
  routes[self] = RouteEntry{self, self, 0, 0, now, true};
  std::vector<NodeId> next_hop(m, kBroadcastId);
  next_hop[self] = self;
  for (int level = 1; level <= max_level; ++level) {
    for (NodeId v = 0; v < m; ++v) {
      if (dist[v] != level) continue;
      NodeId best = kBroadcastId;
      for (NodeId p : adj[v]) {
        if (dist[p] != level - 1) continue;
        NodeId via = (level == 1) ? v : next_hop[p];
        if (best == kBroadcastId || via < best) best = via;
      }
      next_hop[v] = best;
      routes[v] = RouteEntry{v, best, level, 0, now, true};
    }
  }
  return routes;
}

}  // namespace manetsim
