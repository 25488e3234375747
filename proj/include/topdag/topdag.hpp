#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "topdag/cluster.hpp"
#include "topdag/dag.hpp"
#include "topdag/shrink.hpp"
#include "topdag/tree.hpp"

namespace topdag {

enum class Mode { Tree, Dag };

Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode mode) noexcept;

struct TopDagMeta {
    std::uint64_t n = 0;      // edges of the original tree
    std::uint32_t sigma = 2;  // max(2, distinct labels)
    std::uint32_t k = 0;
    Mode mode = Mode::Dag;
};

/// Compressed tree: a sealed cons store whose part reachable from `root`
/// is the top dag. A tree without edges has no cluster representation and
/// is carried as `single_label` instead.
struct TopDag {
    ConsStore store;
    TopId root;
    TopDagMeta meta;
    std::optional<std::string> single_label;

    static TopDag single_node(std::string_view label, Mode mode);
    bool is_single_node() const noexcept { return single_label.has_value(); }
};

struct AssemblyResult {
    TopId root;
    std::uint32_t rounds = 0;
    std::size_t merges = 0;
};

/// Merges the skeleton's edge clusters into one top tree, in rounds. Within
/// a round every edge takes part in at most one merge: first horizontal
/// merges of adjacent siblings (left to right, at least one of rank 0), then
/// vertical merges of consecutive edge pairs along unary chains.
AssemblyResult build_top_tree(const ShrunkenTree& s, ConsStore& store);

/// Everything produced on the way to a top dag, for inspection and checks.
/// `shrunk` and `assembly` refer to ids in `working`; `topdag` is sealed.
struct CompressionTrace {
    ConsStore working;
    ShrunkenTree shrunk;
    std::optional<ShrunkenDag> shrunk_dag;
    ShrinkStats shrink_stats;
    AssemblyResult assembly;
    DagStats input_dag;
    TopDag topdag;
};

/// sigma = max(2, distinct labels of t).
std::uint32_t effective_sigma(const Tree& t);

CompressionTrace compress_traced(const Tree& t, Mode mode,
                                 std::optional<std::uint32_t> k_override = std::nullopt);

/// Requires at least one edge; see TopDag::single_node for the other case.
TopDag compress(const Tree& t, Mode mode, std::optional<std::uint32_t> k_override = std::nullopt);

Tree decompress(const TopDag& d);

struct TopDagStats {
    std::size_t store_nodes = 0;
    std::size_t store_edges = 0;
    std::uint32_t height = 0;
    std::uint32_t rounds = 0;
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t sigma = 2;
    std::size_t dag_size = 0;  // nodes + edges of the minimal dag of the input
    double ratio_nlog = 0;     // store_nodes / (n / log_sigma n)
    double ratio_daglog = 0;   // store_nodes / (dag_size * log2 n)
};

/// Logarithms in the ratios are clamped to at least 1 so tiny inputs do not
/// divide by zero. If `dag_size` is absent the tree is decompressed to
/// measure it.
TopDagStats topdag_stats(const TopDag& d, std::optional<std::size_t> dag_size = std::nullopt,
                         std::uint32_t rounds = 0);

class TopDagFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text format, one record per line:
///   TOPDAG v1 mode=<tree|dag> n=<int> sigma=<int> k=<int>
///   root <id>                 (or: NODE <label>)
///   <id> L <a> <b> <0|1>
///   <id> V|H <left> <right>
std::string serialize_topdag(const TopDag& d);
TopDag deserialize_topdag(std::string_view text);

} // namespace topdag
