// Copyright 2026 The fnfdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "fnfdist/errors.hpp"
#include "fnfdist/oracles.hpp"

namespace fnfdist {

std::size_t hitting_set_target(std::size_t n, std::size_t h, double gamma) {
  if (n == 0) return 0;
  const double t = gamma * (static_cast<double>(n) / static_cast<double>(h)) * std::log(static_cast<double>(n));
  return static_cast<std::size_t>(std::ceil(t));
}

HittingSet sample_hitting_set(std::size_t n, std::size_t h, double gamma, Rng& rng) {
  if (h < 1 || h > std::max<std::size_t>(n, 1)) throw std::invalid_argument("sample_hitting_set: need 1 <= h <= n");
  HittingSet hs{h, gamma, {}};
  const std::size_t target = hitting_set_target(n, h, gamma);
  if (target >= n) {
    hs.vertices.resize(n);
    for (Index v = 0; v < n; ++v) hs.vertices[v] = v;
    return hs;
  }
  std::set<Index> picked;
  for (std::size_t i = 0; i < target; ++i) picked.insert(static_cast<Index>(rng() % n));
  hs.vertices.assign(picked.begin(), picked.end());
  return hs;
}

Distance bounded_graph_dijkstra(const BoundedEdges& edges, Index s, Index t) {
  if (s == t) return Distance(0);
  std::map<Index, std::vector<std::pair<Index, std::uint64_t>>> adj;
  for (const auto& [e, d] : edges) adj[e.first].emplace_back(e.second, d);
  std::map<Index, std::uint64_t> dist;
  using Item = std::pair<std::uint64_t, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (dist[u] != d) continue;
    if (u == t) return Distance(d);
    auto it = adj.find(u);
    if (it == adj.end()) continue;
    for (auto [v, w] : it->second) {
      const std::uint64_t nd = d + w;
      auto dv = dist.find(v);
      if (dv == dist.end() || nd < dv->second) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return Distance::unreachable();
}

std::optional<std::uint64_t> first_nonzero_power(const std::vector<Matrix>& powers, std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < powers.size(); ++k)
    if (powers[k](i, j).v != 0) return k + 1;
  return std::nullopt;
}

namespace {

IndexList fresh_ids(const IndexList& more, const std::unordered_map<Index, std::size_t>& known) {
  IndexList out;
  for (Index v : more)
    if (!known.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

}  // namespace

PowerTable::PowerTable(const PowerOracle& oracle, IndexList ids, std::size_t h) : h_(h) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  ids_ = std::move(ids);
  for (std::size_t i = 0; i < ids_.size(); ++i) pos_[ids_[i]] = i;
  powers_ = query_submatrix_powers(oracle, ids_, ids_, h_);
}

std::size_t PowerTable::position(Index v) const {
  auto it = pos_.find(v);
  if (it == pos_.end()) throw IndexOutOfRange("PowerTable: index " + std::to_string(v) + " not in the table");
  return it->second;
}

void PowerTable::extend(const PowerOracle& oracle, const IndexList& more) {
  const IndexList fresh = fresh_ids(more, pos_);
  if (fresh.empty()) return;
  IndexList all = ids_;
  all.insert(all.end(), fresh.begin(), fresh.end());
  const std::size_t old = ids_.size();
  const auto rows = query_submatrix_powers(oracle, fresh, all, h_);
  const auto cols = query_submatrix_powers(oracle, ids_, fresh, h_);
  for (std::size_t k = 0; k < h_; ++k) {
    Matrix grown(all.size(), all.size());
    for (std::size_t i = 0; i < old; ++i) {
      for (std::size_t j = 0; j < old; ++j) grown(i, j) = powers_[k](i, j);
      for (std::size_t j = 0; j < fresh.size(); ++j) grown(i, old + j) = cols[k](i, j);
    }
    for (std::size_t i = 0; i < fresh.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) grown(old + i, j) = rows[k](i, j);
    powers_[k] = std::move(grown);
  }
  for (std::size_t i = 0; i < fresh.size(); ++i) pos_[fresh[i]] = old + i;
  ids_ = std::move(all);
}

std::vector<Matrix> PowerTable::select(const IndexList& rows, const IndexList& cols) const {
  IndexList r(rows.size()), c(cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) r[i] = position(rows[i]);
  for (std::size_t j = 0; j < cols.size(); ++j) c[j] = position(cols[j]);
  std::vector<Matrix> out;
  out.reserve(h_);
  for (const auto& p : powers_) out.push_back(fnfdist::select(p, r, c));
  return out;
}

BorderedPowers::BorderedPowers(const PowerOracle& oracle, const PowerTable& base, const IndexList& extra)
    : base_(base) {
  for (Index v : extra)
    if (!base.contains(v) && !extra_pos_.count(v)) {
      extra_pos_[v] = extra_.size();
      extra_.push_back(v);
    }
  if (extra_.empty()) return;
  all_ = base.ids();
  all_.insert(all_.end(), extra_.begin(), extra_.end());
  extra_rows_ = query_submatrix_powers(oracle, extra_, all_, base.h());
  extra_cols_ = query_submatrix_powers(oracle, base.ids(), extra_, base.h());
}

std::vector<Matrix> BorderedPowers::select(const IndexList& rows, const IndexList& cols) const {
  if (extra_.empty()) return base_.select(rows, cols);
  const std::size_t nb = base_.ids().size();
  // (which table, row, col) per output entry.
  struct Src {
    int table;
    std::size_t r;
    std::size_t c;
  };
  std::vector<Src> src(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto er = extra_pos_.find(rows[i]);
      auto ec = extra_pos_.find(cols[j]);
      Src& s = src[i * cols.size() + j];
      if (er != extra_pos_.end()) {
        s = {1, er->second, ec != extra_pos_.end() ? nb + ec->second : base_.position(cols[j])};
      } else if (ec != extra_pos_.end()) {
        s = {2, base_.position(rows[i]), ec->second};
      } else {
        s = {0, base_.position(rows[i]), base_.position(cols[j])};
      }
    }
  std::vector<Matrix> out;
  out.reserve(base_.h());
  for (std::size_t k = 0; k < base_.h(); ++k) {
    Matrix m(rows.size(), cols.size());
    const Matrix* tables[3] = {&base_.powers()[k], &extra_rows_[k], &extra_cols_[k]};
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const Src& s = src[i * cols.size() + j];
        m(i, j) = (*tables[s.table])(s.r, s.c);
      }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fnfdist
