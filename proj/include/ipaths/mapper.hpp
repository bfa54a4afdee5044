#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipaths/search_graph.hpp"

namespace ipaths {

struct Point {
    std::string id;
    std::vector<double> filters;  // f_1(x) .. f_h(x)
    double target = 0.0;          // g(x)
};

struct PointCloud {
    std::vector<Point> points;
    int h() const { return points.empty() ? 0 : static_cast<int>(points.front().filters.size()); }
};

/// One filter dimension of the cover: `intervals` uniform-width intervals
/// over [lo, hi] (the data range unless `range` is given), consecutive ones
/// overlapping by `overlap` of their width. Intervals are half-open except
/// the last, which is closed at hi.
struct CoverDimension {
    int intervals = 10;
    double overlap = 0.3;
    std::optional<std::pair<double, double>> range;
};

struct CoverSpec {
    std::vector<CoverDimension> dims;

    static CoverSpec uniform(int h, int intervals, double overlap) {
        return CoverSpec{std::vector<CoverDimension>(h, CoverDimension{intervals, overlap, {}})};
    }
};

struct Cluster {
    int id = 0;
    std::vector<std::string> members;  // point ids; empty for bare skeletons
    double g_mean = 0.0;
    std::vector<double> filter_means;
    std::optional<int> size;           // member count when known
};

/// Mapper 1-skeleton: clusters plus links between clusters sharing points.
struct Skeleton {
    std::vector<Cluster> clusters;
    std::vector<std::pair<int, int>> links;  // ascending, first < second
};

/// Builds the cover, pulls it back to bins (Cartesian products of intervals,
/// visited in lexicographic order), splits each bin by single linkage on the
/// target (break where consecutive sorted values differ by more than gap),
/// and links clusters that share a point.
///
/// Throws InputError for an empty or ragged cloud and duplicate ids,
/// ParameterError for gap <= 0 or a cover that cannot tile its range.
Skeleton build_skeleton(const PointCloud& cloud, const CoverSpec& cover, double gap);

/// range(g) / 20, or 1 when every target value is equal.
double default_gap(const PointCloud& cloud);

/// Checks cluster ids, link endpoints and shared membership.
void validate_skeleton(const Skeleton& sk);

UndirectedGraph skeleton_graph(const Skeleton& sk);

SearchGraph skeleton_to_search_graph(const Skeleton& sk, Rule rule,
                                     std::optional<double> tau = std::nullopt);

struct CsvColumns {
    std::string id = "id";
    std::vector<std::string> filters;  // empty: every column except id and target
    std::string target = "g";
};

/// Reads a headed, comma-separated point cloud. Errors name the row and column.
PointCloud read_point_cloud_csv(std::istream& in, const CsvColumns& columns = {});
PointCloud read_point_cloud_csv_file(const std::string& path, const CsvColumns& columns = {});

}  // namespace ipaths
