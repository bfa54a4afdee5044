#include "ipaths/mapper.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ipaths/errors.hpp"

namespace ipaths {

namespace {

struct Tiling {
    double lo = 0.0, hi = 0.0, width = 0.0, step = 0.0;
    int count = 1;

    // Interval indices containing x, ascending.
    std::vector<int> containing(double x) const {
        std::vector<int> out;
        if (count == 1) {
            if (x >= lo && x <= hi)
                out.push_back(0);
            return out;
        }
        for (int t = 0; t < count; ++t) {
            const double start = lo + t * step;
            const bool last = t == count - 1;
            if (x >= start && (last ? x <= hi : x < start + width))
                out.push_back(t);
        }
        return out;
    }
};

Tiling make_tiling(const CoverDimension& dim, double data_lo, double data_hi, int index) {
    const std::string where = "cover dimension " + std::to_string(index + 1);
    if (dim.intervals < 1)
        throw ParameterError(where + ": interval count must be positive");
    if (!(dim.overlap >= 0.0 && dim.overlap < 1.0))
        throw ParameterError(where + ": overlap must lie in [0, 1)");
    Tiling t;
    t.count = dim.intervals;
    t.lo = data_lo;
    t.hi = data_hi;
    if (dim.range) {
        t.lo = dim.range->first;
        t.hi = dim.range->second;
        if (!(t.lo <= data_lo && data_hi <= t.hi))
            throw ParameterError(where + ": explicit range does not contain every point");
    }
    // A constant filter (or a single point) cannot be tiled; it gets one interval.
    if (!(t.lo < t.hi))
        t.count = 1;
    if (t.count > 1) {
        t.width = (t.hi - t.lo) / ((t.count - 1) * (1.0 - dim.overlap) + 1.0);
        t.step = t.width * (1.0 - dim.overlap);
    } else {
        t.width = t.hi - t.lo;
    }
    return t;
}

}  // namespace

double default_gap(const PointCloud& cloud) {
    if (cloud.points.empty())
        return 1.0;
    auto [lo, hi] = std::minmax_element(cloud.points.begin(), cloud.points.end(),
                                        [](const Point& a, const Point& b) { return a.target < b.target; });
    const double range = hi->target - lo->target;
    return range > 0.0 ? range / 20.0 : 1.0;
}

Skeleton build_skeleton(const PointCloud& cloud, const CoverSpec& cover, double gap) {
    if (cloud.points.empty())
        throw InputError("point cloud is empty");
    if (!(gap > 0.0))
        throw ParameterError("clustering gap must be positive");
    const int h = cloud.h();
    if (h < 1)
        throw InputError("points need at least one filter value");
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& pt = cloud.points[i];
        if (static_cast<int>(pt.filters.size()) != h)
            throw InputError("point " + pt.id + " has " + std::to_string(pt.filters.size()) +
                             " filter values, expected " + std::to_string(h));
        if (!ids.insert(pt.id).second)
            throw InputError("duplicate point id '" + pt.id + "'");
        for (double f : pt.filters)
            if (!std::isfinite(f))
                throw InputError("point " + pt.id + " has a non-finite filter value");
        if (!std::isfinite(pt.target))
            throw InputError("point " + pt.id + " has a non-finite target value");
    }
    if (static_cast<int>(cover.dims.size()) != h)
        throw ParameterError("cover has " + std::to_string(cover.dims.size()) +
                             " dimensions but points have " + std::to_string(h) + " filters");

    std::vector<Tiling> tilings;
    for (int d = 0; d < h; ++d) {
        double lo = cloud.points.front().filters[d], hi = lo;
        for (const auto& pt : cloud.points) {
            lo = std::min(lo, pt.filters[d]);
            hi = std::max(hi, pt.filters[d]);
        }
        tilings.push_back(make_tiling(cover.dims[d], lo, hi, d));
    }

    // Pullback: bin key = interval index per dimension; std::map keeps the
    // lexicographic order used for cluster numbering.
    std::map<std::vector<int>, std::vector<int>> bins;
    for (int i = 0; i < static_cast<int>(cloud.points.size()); ++i) {
        std::vector<std::vector<int>> per_dim;
        for (int d = 0; d < h; ++d)
            per_dim.push_back(tilings[d].containing(cloud.points[i].filters[d]));
        std::vector<int> key(h, 0);
        std::vector<std::size_t> pos(h, 0);
        while (true) {
            for (int d = 0; d < h; ++d)
                key[d] = per_dim[d][pos[d]];
            bins[key].push_back(i);
            int d = h - 1;
            while (d >= 0 && ++pos[d] == per_dim[d].size())
                pos[d--] = 0;
            if (d < 0)
                break;
        }
    }

    Skeleton sk;
    std::vector<std::vector<int>> clusters_of(cloud.points.size());
    for (auto& [key, members] : bins) {
        std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
            return cloud.points[a].target < cloud.points[b].target;
        });
        std::size_t start = 0;
        for (std::size_t i = 1; i <= members.size(); ++i) {
            const bool split = i == members.size() ||
                               cloud.points[members[i]].target - cloud.points[members[i - 1]].target > gap;
            if (!split)
                continue;
            Cluster c;
            c.id = static_cast<int>(sk.clusters.size());
            c.filter_means.assign(h, 0.0);
            for (std::size_t j = start; j < i; ++j) {
                const auto& pt = cloud.points[members[j]];
                c.members.push_back(pt.id);
                c.g_mean += pt.target;
                for (int d = 0; d < h; ++d)
                    c.filter_means[d] += pt.filters[d];
                clusters_of[members[j]].push_back(c.id);
            }
            const double count = static_cast<double>(i - start);
            c.g_mean /= count;
            for (auto& f : c.filter_means)
                f /= count;
            c.size = static_cast<int>(i - start);
            sk.clusters.push_back(std::move(c));
            start = i;
        }
    }

    std::set<std::pair<int, int>> links;
    for (const auto& cs : clusters_of)
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t b = a + 1; b < cs.size(); ++b)
                links.insert(std::minmax(cs[a], cs[b]));
    sk.links.assign(links.begin(), links.end());
    return sk;
}

void validate_skeleton(const Skeleton& sk) {
    const int n = static_cast<int>(sk.clusters.size());
    for (int i = 0; i < n; ++i) {
        const auto& c = sk.clusters[i];
        if (c.id != i)
            throw InputError("clusters[" + std::to_string(i) + "].id: expected " + std::to_string(i));
        if (c.size && !c.members.empty() && *c.size != static_cast<int>(c.members.size()))
            throw InputError("clusters[" + std::to_string(i) + "].size: disagrees with members");
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < sk.links.size(); ++i) {
        auto [a, b] = sk.links[i];
        const std::string where = "links[" + std::to_string(i) + "]";
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw InputError(where + ": references an unknown cluster");
        if (a == b)
            throw InputError(where + ": self-loop on cluster " + std::to_string(a));
        if (!seen.insert(std::minmax(a, b)).second)
            throw InputError(where + ": duplicate link");
        const auto& ma = sk.clusters[a].members;
        const auto& mb = sk.clusters[b].members;
        if (!ma.empty() && !mb.empty()) {
            std::unordered_set<std::string> set_a(ma.begin(), ma.end());
            if (std::none_of(mb.begin(), mb.end(), [&](const auto& id) { return set_a.count(id) > 0; }))
                throw InputError(where + ": linked clusters share no member");
        }
    }
}

UndirectedGraph skeleton_graph(const Skeleton& sk) {
    validate_skeleton(sk);
    UndirectedGraph g;
    for (const auto& c : sk.clusters) {
        std::optional<int> size = c.size;
        if (!size && !c.members.empty())
            size = static_cast<int>(c.members.size());
        g.vertices.push_back(Vertex{c.id, c.g_mean, c.filter_means, size});
    }
    for (auto [a, b] : sk.links)
        g.links.emplace_back(a, b);
    return g;
}

SearchGraph skeleton_to_search_graph(const Skeleton& sk, Rule rule, std::optional<double> tau) {
    return direct_edges(skeleton_graph(sk), rule, tau);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_number(const std::string& text, int row, const std::string& column) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw InputError("row " + std::to_string(row) + ", column '" + column + "': cannot parse '" +
                         text + "' as a number");
    return v;
}

}  // namespace

PointCloud read_point_cloud_csv(std::istream& in, const CsvColumns& columns) {
    std::string line;
    if (!std::getline(in, line))
        throw InputError("CSV input is empty (missing header row)");
    const auto header = split_row(line);
    auto find = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw InputError("CSV header has no column named '" + name + "'");
        return static_cast<int>(it - header.begin());
    };
    const int id_col = find(columns.id);
    const int target_col = find(columns.target);
    std::vector<int> filter_cols;
    std::vector<std::string> filter_names = columns.filters;
    if (filter_names.empty())
        for (const auto& name : header)
            if (name != columns.id && name != columns.target)
                filter_names.push_back(name);
    if (filter_names.empty())
        throw InputError("CSV has no filter columns");
    for (const auto& name : filter_names)
        filter_cols.push_back(find(name));

    PointCloud cloud;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw InputError("row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " columns, found " +
                             std::to_string(cells.size()));
        Point pt;
        pt.id = cells[id_col];
        if (pt.id.empty())
            throw InputError("row " + std::to_string(row) + ", column '" + columns.id + "': empty id");
        for (std::size_t f = 0; f < filter_cols.size(); ++f)
            pt.filters.push_back(parse_number(cells[filter_cols[f]], row, filter_names[f]));
        pt.target = parse_number(cells[target_col], row, columns.target);
        cloud.points.push_back(std::move(pt));
    }
    return cloud;
}

PointCloud read_point_cloud_csv_file(const std::string& path, const CsvColumns& columns) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open CSV file '" + path + "'");
    return read_point_cloud_csv(in, columns);
}

}  // namespace ipaths
