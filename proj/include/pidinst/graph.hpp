#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pidinst/json.hpp"
#include "pidinst/record.hpp"

namespace pidinst {

enum class node_kind { instrument, external };

struct graph_node {
  std::string pid_value;  // normalized (resolver URLs stripped)
  node_kind kind = node_kind::external;

  bool operator==(const graph_node&) const = default;
};

struct graph_edge {
  std::string from;           // normalized instrument PID
  std::string to;             // normalized target value
  std::string relation;       // relation token
  std::string identifier_type;

  bool operator==(const graph_edge&) const = default;
};

enum class edge_direction { out, in, both };

/// Directed multigraph induced by the related-identifier entries of a
/// record corpus: one instrument node per record, one external node per
/// link target without a corpus record, one edge per distinct
/// (from, to, relation) triple. Immutable once built; queries are const.
class pid_graph {
 public:
  /// Corpus records must carry identifiers; identifiers and link targets
  /// are normalized (trimmed, resolver URLs stripped). Throws
  /// duplicate_instrument_pid_error when two records share an identifier.
  static pid_graph build(const std::vector<instrument_record>& corpus);

  /// Edges touching pid, filtered by relation and direction, ordered by
  /// (relation, to, from). Throws node_not_found_error.
  std::vector<graph_edge> neighbors(const std::string& pid_value,
                                    const std::optional<relation_type>& relation_filter = {},
                                    edge_direction direction = edge_direction::out) const;

  /// External node values: link targets with no corpus record. Sorted.
  std::vector<std::string> dangling() const;

  std::vector<graph_node> nodes() const;  // sorted by value
  const std::vector<graph_edge>& edges() const { return edges_; }  // sorted

  size_t node_count() const { return node_kinds_.size(); }
  size_t edge_count() const { return edges_.size(); }

  /// One "from<TAB>relation<TAB>to" line per edge.
  std::string edge_list() const;
  json to_json() const;

  bool operator==(const pid_graph&) const = default;

 private:
  std::map<std::string, node_kind> node_kinds_;
  std::vector<graph_edge> edges_;
};

}  // namespace pidinst
