#include "pidinst/graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "pidinst/errors.hpp"

namespace pidinst {

namespace {

auto edge_key(const graph_edge& e) { return std::tie(e.from, e.relation, e.to); }

}  // namespace

pid_graph pid_graph::build(const std::vector<instrument_record>& corpus) {
  pid_graph g;

  for (const auto& r : corpus) {
    if (!r.identifier || r.identifier->empty()) {
      throw missing_mandatory_error("identifier");
    }
    std::string id = normalize_pid_value(r.identifier->value());
    auto [it, inserted] = g.node_kinds_.emplace(id, node_kind::instrument);
    if (!inserted && it->second == node_kind::instrument) {
      throw duplicate_instrument_pid_error(id);
    }
    it->second = node_kind::instrument;
  }

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& r : corpus) {
    std::string from = normalize_pid_value(r.identifier->value());
    for (const auto& rel : r.related_identifiers) {
      graph_edge e;
      e.from = from;
      e.to = normalize_pid_value(rel.value);
      e.relation = rel.relation.token();
      e.identifier_type = rel.identifier_type;
      if (!seen.insert(edge_key(e)).second) {
        continue;  // duplicate (from, relation, to) triple
      }
      g.node_kinds_.emplace(e.to, node_kind::external);
      g.edges_.push_back(std::move(e));
    }
  }

  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const graph_edge& a, const graph_edge& b) { return edge_key(a) < edge_key(b); });
  return g;
}

std::vector<graph_edge> pid_graph::neighbors(const std::string& pid_value,
                                             const std::optional<relation_type>& relation_filter,
                                             edge_direction direction) const {
  std::string id = normalize_pid_value(pid_value);
  if (node_kinds_.find(id) == node_kinds_.end()) {
    throw node_not_found_error(id);
  }
  std::vector<graph_edge> out;
  for (const auto& e : edges_) {
    bool touches = (direction != edge_direction::in && e.from == id) ||
                   (direction != edge_direction::out && e.to == id);
    if (!touches) {
      continue;
    }
    if (relation_filter && e.relation != relation_filter->token()) {
      continue;
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const graph_edge& a, const graph_edge& b) {
    return std::tie(a.relation, a.to, a.from) < std::tie(b.relation, b.to, b.from);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> pid_graph::dangling() const {
  std::vector<std::string> out;
  for (const auto& [value, kind] : node_kinds_) {
    if (kind == node_kind::external) {
      out.push_back(value);
    }
  }
  return out;  // map iteration is already sorted
}

std::vector<graph_node> pid_graph::nodes() const {
  std::vector<graph_node> out;
  out.reserve(node_kinds_.size());
  for (const auto& [value, kind] : node_kinds_) {
    out.push_back({value, kind});
  }
  return out;
}

std::string pid_graph::edge_list() const {
  std::string out;
  for (const auto& e : edges_) {
    out += e.from + "\t" + e.relation + "\t" + e.to + "\n";
  }
  return out;
}

json pid_graph::to_json() const {
  json j = json::object();
  json nodes_json = json::array();
  for (const auto& n : nodes()) {
    json item = json::object();
    item["pid"] = n.pid_value;
    item["kind"] = n.kind == node_kind::instrument ? "Instrument" : "External";
    nodes_json.push_back(std::move(item));
  }
  j["nodes"] = std::move(nodes_json);
  json edges_json = json::array();
  for (const auto& e : edges_) {
    json item = json::object();
    item["from"] = e.from;
    item["relation"] = e.relation;
    item["to"] = e.to;
    item["identifierType"] = e.identifier_type;
    edges_json.push_back(std::move(item));
  }
  j["edges"] = std::move(edges_json);
  return j;
}

}  // namespace pidinst
