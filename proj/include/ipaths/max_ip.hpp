#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ipaths/scoring.hpp"
#include "ipaths/search_graph.hpp"

namespace ipaths {

/// Restricts which cells of the score table are built and searched.
struct MaxIpOptions {
    int min_length = 1;                // only report paths with at least this many edges
    std::optional<int> max_length;     // do not build columns beyond this length
    const EdgeMask* mask = nullptr;    // inactive edges are ignored; null means all edges
};

struct SolverStats {
    int iterations = 0;            // sparse sweeps, including the final one that adds nothing
    int columns = 0;               // dense table width
    std::size_t stored_cells = 0;  // finite cells held in the table
    std::size_t table_bytes = 0;
};

struct MaxIpResult {
    std::optional<InterestingPath> path;  // empty when no path satisfies the options
    SolverStats stats;

    bool found() const noexcept { return path.has_value(); }
};

inline constexpr double kNoScore = -std::numeric_limits<double>::infinity();

/// Location of one score-table entry: best score of a path with `length`
/// edges ending at `edge`.
struct CellRef {
    EdgeId edge = -1;
    int length = 0;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// Dense m x J score table (J = longest path length, capped by max_length),
/// filled in topological order. Column updates go through the SIMD row
/// kernels: per vertex, incoming rows of one signature are merged with a
/// running max, then shifted by one rank into each outgoing edge's row.
class DenseScoreTable {
public:
    DenseScoreTable(const SearchGraph& g, const MaxIpOptions& options = {});

    int columns() const noexcept { return columns_; }
    double value(EdgeId e, int length) const;
    /// Cell realizing the best score, ties to smallest (length, edge id).
    std::optional<CellRef> best(int min_length = 1, std::optional<int> max_length = {}) const;
    /// Edge sequence of the path stored at cell, first edge first.
    std::vector<EdgeId> backtrack(CellRef cell) const;
    std::size_t stored_cells() const;
    std::size_t bytes() const noexcept;

private:
    const SearchGraph* g_;
    int columns_ = 0;
    std::vector<double> score_;      // [edge * columns + (length - 1)]
    std::vector<std::int64_t> pred_; // predecessor edge id, -1 for length 1 / absent
};

/// Sparse score table. Each edge keeps only the lengths actually reachable
/// (its list L(e)). Lists start at {1} and are extended sweep by sweep: in
/// sweep t, the cells of length t are merged per (head vertex, signature),
/// and every compatible outgoing edge gains length t + 1. New cells are
/// committed only at the end of a sweep.
class ScoreTable {
public:
    struct Cell {
        int length;
        double score;
        EdgeId pred_edge;   // -1 at length 1
        std::int32_t pred_cell;
    };

    ScoreTable(const SearchGraph& g, const MaxIpOptions& options = {});

    std::span<const Cell> cells(EdgeId e) const { return cells_.at(e); }
    /// Reachable lengths L(e), ascending.
    std::vector<int> lengths(EdgeId e) const;
    double value(EdgeId e, int length) const;
    std::optional<CellRef> best(int min_length = 1, std::optional<int> max_length = {}) const;
    std::vector<EdgeId> backtrack(CellRef cell) const;

    int iterations() const noexcept { return iterations_; }
    std::size_t stored_cells() const noexcept { return stored_; }
    std::size_t bytes() const noexcept;

private:
    const SearchGraph* g_;
    std::vector<std::vector<Cell>> cells_;
    int iterations_ = 0;
    std::size_t stored_ = 0;
};

/// Maximum interesting path on a DAG via the dense table.
/// Throws DomainError on a cyclic graph.
MaxIpResult max_ip(const SearchGraph& g, const MaxIpOptions& options = {});

/// Same contract as max_ip, computed with the sparse table.
MaxIpResult max_ip_sparse(const SearchGraph& g, const MaxIpOptions& options = {});

/// Score of the best interesting path ending at each (active) edge.
std::map<EdgeId, double> per_edge_best(const SearchGraph& g, const MaxIpOptions& options = {});

}  // namespace ipaths
