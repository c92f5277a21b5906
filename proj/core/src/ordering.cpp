#include "schur/ordering.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

namespace schur {

OrderingMethod parse_ordering(std::string_view name) {
  if (name == "natural") return OrderingMethod::Natural;
  if (name == "amd") return OrderingMethod::Amd;
  if (name == "rcm") return OrderingMethod::ReverseCuthillMcKee;
  throw ParameterError("unknown ordering '" + std::string(name) + "' (natural|amd|rcm)");
}

std::string_view to_string(OrderingMethod m) {
  switch (m) {
    case OrderingMethod::Natural: return "natural";
    case OrderingMethod::Amd: return "amd";
    case OrderingMethod::ReverseCuthillMcKee: return "rcm";
  }
  return "?";
}

namespace {

void require_square(const CsrMatrix& k) {
  if (k.rows() != k.cols()) throw DimensionError("ordering needs a square matrix");
}

std::vector<std::vector<Index>> adjacency(const CsrMatrix& k) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(k.rows()));
  for (Index r = 0; r < k.rows(); ++r)
    for (Index c : k.row_cols(r))
      if (c != r) {
        adj[r].push_back(c);
        adj[c].push_back(r);
      }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

}  // namespace

Permutation fill_reducing_order(const CsrMatrix& k, OrderingMethod method) {
  require_square(k);
  switch (method) {
    case OrderingMethod::Natural: return Permutation::identity(k.rows());
    case OrderingMethod::Amd: return approximate_minimum_degree(k);
    case OrderingMethod::ReverseCuthillMcKee: return reverse_cuthill_mckee(k);
  }
  return Permutation::identity(k.rows());
}

Permutation approximate_minimum_degree(const CsrMatrix& k) {
  require_square(k);
  const Index n = k.rows();

  // Quotient graph.  A node is a live variable, an element (eliminated
  // variable standing for its clique), or dead (absorbed element).
  enum class Kind : unsigned char { Variable, Element, Dead };
  std::vector<Kind> kind(static_cast<std::size_t>(n), Kind::Variable);
  std::vector<std::vector<Index>> var_adj = adjacency(k);  // A_i
  std::vector<std::vector<Index>> elem_adj(static_cast<std::size_t>(n));  // E_i
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(n));   // L_e

  std::vector<Index> degree(static_cast<std::size_t>(n));
  std::set<std::pair<Index, Index>> queue;
  for (Index i = 0; i < n; ++i) {
    degree[i] = static_cast<Index>(var_adj[i].size());
    queue.emplace(degree[i], i);
  }

  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<Index> mark(static_cast<std::size_t>(n), -1);
  std::vector<Index> outside(static_cast<std::size_t>(n), -1);  // |L_e \ L_p|, valid when stamp matches
  std::vector<Index> outside_stamp(static_cast<std::size_t>(n), -1);

  for (Index step = 0; step < n; ++step) {
    const Index p = queue.begin()->second;
    queue.erase(queue.begin());
    order.push_back(p);

    // L_p = (A_p u union of L_e for e in E_p) minus p.
    std::vector<Index> lp;
    mark[p] = step;
    for (Index v : var_adj[p])
      if (kind[v] == Kind::Variable && mark[v] != step) {
        mark[v] = step;
        lp.push_back(v);
      }
    for (Index e : elem_adj[p]) {
      if (kind[e] != Kind::Element) continue;
      for (Index v : members[e])
        if (kind[v] == Kind::Variable && mark[v] != step) {
          mark[v] = step;
          lp.push_back(v);
        }
      kind[e] = Kind::Dead;  // absorbed into p
      members[e].clear();
      members[e].shrink_to_fit();
    }
    kind[p] = Kind::Element;
    var_adj[p].clear();
    elem_adj[p].clear();
    std::sort(lp.begin(), lp.end());
    members[p] = lp;

    // Prune the neighbourhoods of the variables in L_p.
    for (Index i : lp) {
      auto& a = var_adj[i];
      a.erase(std::remove_if(a.begin(), a.end(),
                             [&](Index v) { return kind[v] != Kind::Variable || mark[v] == step; }),
              a.end());
      auto& el = elem_adj[i];
      el.erase(std::remove_if(el.begin(), el.end(), [&](Index e) { return kind[e] != Kind::Element; }),
               el.end());
    }

    // |L_e \ L_p| for every element adjacent to L_p.
    for (Index i : lp)
      for (Index e : elem_adj[i]) {
        if (outside_stamp[e] != step) {
          outside_stamp[e] = step;
          outside[e] = static_cast<Index>(members[e].size());
        }
        --outside[e];
      }
    // Elements entirely inside L_p are absorbed as well.
    for (Index i : lp)
      for (Index e : elem_adj[i])
        if (kind[e] == Kind::Element && outside[e] == 0) {
          kind[e] = Kind::Dead;
          members[e].clear();
        }

    const Index remaining = n - step - 1;
    const auto lp_size = static_cast<Index>(lp.size());
    for (Index i : lp) {
      auto& el = elem_adj[i];
      el.erase(std::remove_if(el.begin(), el.end(), [&](Index e) { return kind[e] != Kind::Element; }),
               el.end());
      Index external = static_cast<Index>(var_adj[i].size()) + (lp_size - 1);
      for (Index e : el) external += outside[e];
      el.push_back(p);
      const Index d = std::min({remaining - 1, degree[i] + lp_size - 1, external});
      queue.erase({degree[i], i});
      degree[i] = std::max<Index>(d, 0);
      queue.emplace(degree[i], i);
    }
  }
  return Permutation::from_forward(std::move(order));
}

Permutation reverse_cuthill_mckee(const CsrMatrix& k) {
  require_square(k);
  const Index n = k.rows();
  const auto adj = adjacency(k);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));

  auto bfs_levels = [&](Index root, std::vector<Index>& level) {
    std::fill(level.begin(), level.end(), -1);
    std::deque<Index> q{root};
    level[root] = 0;
    Index last = root;
    while (!q.empty()) {
      const Index v = q.front();
      q.pop_front();
      last = v;
      for (Index w : adj[v])
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          q.push_back(w);
        }
    }
    return last;
  };

  std::vector<Index> level(static_cast<std::size_t>(n));
  for (Index start = 0; start < n; ++start) {
    if (visited[start]) continue;
    // Pseudo-peripheral root: repeat BFS from the farthest node while the
    // eccentricity grows.
    Index root = start;
    Index far = bfs_levels(root, level);
    Index ecc = level[far];
    for (int it = 0; it < 8; ++it) {
      const Index cand = far;
      const Index cand_far = bfs_levels(cand, level);
      if (level[cand_far] <= ecc) break;
      root = cand;
      far = cand_far;
      ecc = level[cand_far];
    }
    std::deque<Index> q{root};
    visited[root] = 1;
    while (!q.empty()) {
      const Index v = q.front();
      q.pop_front();
      order.push_back(v);
      std::vector<Index> next;
      for (Index w : adj[v])
        if (!visited[w]) {
          visited[w] = 1;
          next.push_back(w);
        }
      std::stable_sort(next.begin(), next.end(),
                       [&](Index a, Index b) { return adj[a].size() < adj[b].size(); });
      q.insert(q.end(), next.begin(), next.end());
    }
  }
  std::reverse(order.begin(), order.end());
  return Permutation::from_forward(std::move(order));
}

}  // namespace schur
